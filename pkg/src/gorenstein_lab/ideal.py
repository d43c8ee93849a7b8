"""Ideals of a polynomial ring: Gröbner bases, membership, colon, saturation.

Colon ideals and intersections go through elimination of an auxiliary
variable.  When the ideal being divided is zero-dimensional the colon is a
kernel computation on the finite quotient, which is much cheaper; both paths
are exercised against each other in the tests.
"""

from __future__ import annotations

import heapq

import itertools
from dataclasses import dataclass

from . import linalg
from .polynomial import Exponent, Polynomial, PolyRing


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


class _Desc:
    __slots__ = ("k", "m")

    def __init__(self, k, m):
        self.k, self.m = k, m

    def __lt__(self, other):
        return self.k > other.k


def _reduce(terms: dict, basis: list, key, full: bool = True) -> dict:
    """Remainder of ``terms`` on division by monic ``basis`` entries ``(lm, terms)``."""
    f = dict(terms)
    rem: dict = {}
    heap = [_Desc(key(m), m) for m in f]
    heapq.heapify(heap)
    queued = set(f)
    while heap:
        m = heapq.heappop(heap).m
        queued.discard(m)
        if m not in f:
            continue
        c = f[m]
        for lm, g in basis:
            if _divides(lm, m):
                shift = _sub(m, lm)
                for e, v in g.items():
                    ee = tuple(a + b for a, b in zip(e, shift))
                    nv = f.get(ee, 0) - c * v
                    if nv:
                        f[ee] = nv
                        if ee not in queued:
                            queued.add(ee)
                            heapq.heappush(heap, _Desc(key(ee), ee))
                    else:
                        f.pop(ee, None)
                break
        else:
            rem[m] = f.pop(m)
            if not full:
                rem.update(f)
                return rem
    return rem


def _monic(terms: dict, key) -> tuple[Exponent, dict]:
    lm = max(terms, key=key)
    c = terms[lm]
    return lm, {e: v / c for e, v in terms.items()}


def buchberger(polys: list[Polynomial]) -> list[Polynomial]:
    """Reduced Gröbner basis of the ideal generated by ``polys``.

    Uses the normal selection strategy together with Buchberger's coprime
    and chain criteria.  The result is monic and sorted by decreasing
    leading monomial, hence independent of generator order.
    """
    polys = [p for p in polys if p]
    if not polys:
        return []
    ring = polys[0].ring
    key = ring.key
    deg = ring.mono_degree
    basis: list[tuple[Exponent, dict]] = []
    for p in polys:
        r = _reduce(p.terms, basis, key)
        if r:
            basis.append(_monic(r, key))
            if not any(basis[-1][0]):
                return [ring.one()]
    pairs = set(itertools.combinations(range(len(basis)), 2))

    while pairs:
        i, j = min(pairs, key=lambda ij: (deg(_lcm(basis[ij[0]][0], basis[ij[1]][0])), ij))
        pairs.discard((i, j))
        lmi, gi = basis[i]
        lmj, gj = basis[j]
        L = _lcm(lmi, lmj)
        if all(a == 0 or b == 0 for a, b in zip(lmi, lmj)):
            continue
        if any(
            k not in (i, j)
            and _divides(basis[k][0], L)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(basis))
        ):
            continue
        si, sj = _sub(L, lmi), _sub(L, lmj)
        s: dict = {}
        for e, v in gi.items():
            s[tuple(a + b for a, b in zip(e, si))] = v
        for e, v in gj.items():
            ee = tuple(a + b for a, b in zip(e, sj))
            nv = s.get(ee, 0) - v
            if nv:
                s[ee] = nv
            else:
                s.pop(ee, None)
        r = _reduce(s, basis, key)
        if r:
            new = _monic(r, key)
            if not any(new[0]):
                return [ring.one()]
            n = len(basis)
            basis.append(new)
            pairs.update((k, n) for k in range(n))

    # minimalize, then interreduce
    lms = [lm for lm, _ in basis]
    keep = []
    for idx, lm in enumerate(lms):
        if any(
            (_divides(o, lm) and o != lm) or (o == lm and jdx < idx)
            for jdx, o in enumerate(lms)
            if jdx != idx
        ):
            continue
        keep.append(basis[idx])
    reduced = []
    for idx, (lm, g) in enumerate(keep):
        others = [b for jdx, b in enumerate(keep) if jdx != idx]
        tail = dict(g)
        c = tail.pop(lm)
        r = _reduce(tail, others, key)
        r[lm] = c
        reduced.append(_monic(r, key))
    reduced.sort(key=lambda b: key(b[0]), reverse=True)
    return [Polynomial(ring, g) for _, g in reduced]


@dataclass(frozen=True)
class QuotientBasis:
    """Standard monomials of ``k[x]/I``; ``finite`` is False when there are infinitely many."""

    finite: bool
    monomials: tuple = ()

    def __len__(self):
        if not self.finite:
            raise ValueError("infinite-dimensional quotient")
        return len(self.monomials)

    def by_degree(self, ring: PolyRing) -> dict[int, list[Exponent]]:
        out: dict[int, list[Exponent]] = {}
        for m in self.monomials:
            out.setdefault(ring.mono_degree(m), []).append(m)
        return out


class Ideal:
    """An ideal of ``ring`` given by generators; the reduced Gröbner basis is cached."""

    def __init__(self, ring: PolyRing, gens=()):
        self.ring = ring
        gl = []
        for g in gens:
            if isinstance(g, str):
                g = ring.parse(g)
            elif not isinstance(g, Polynomial):
                g = ring.const(g)
            elif g.ring != ring:
                g = g.to_ring(ring)
            if g:
                gl.append(g)
        self.gens = tuple(gl)
        self._gb = None
        self._gb_pairs = None

    @classmethod
    def maximal(cls, ring: PolyRing) -> "Ideal":
        return cls(ring, ring.gens())

    def __repr__(self):
        return "Ideal(%s)" % ", ".join(str(g) for g in self.gens)

    # -- Gröbner data ---------------------------------------------------

    @property
    def gb(self) -> list[Polynomial]:
        if self._gb is None:
            self._gb = buchberger(list(self.gens))
        return self._gb

    def _pairs(self):
        if self._gb_pairs is None:
            self._gb_pairs = [(g.lm(), g.terms) for g in self.gb]
        return self._gb_pairs

    def leading_monomials(self) -> list[Exponent]:
        return [g.lm() for g in self.gb]

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            f = f.to_ring(self.ring)
        return Polynomial(self.ring, _reduce(f.terms, self._pairs(), self.ring.key))

    def contains(self, f) -> bool:
        if isinstance(f, str):
            f = self.ring.parse(f)
        return self.normal_form(f).is_zero()

    def __contains__(self, f) -> bool:
        return self.contains(f)

    def is_unit(self) -> bool:
        gb = self.gb
        return len(gb) == 1 and gb[0].is_constant()

    def is_zero(self) -> bool:
        return not self.gens

    def issubset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.gens)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return [g.terms for g in self.gb] == [g.terms for g in other.gb]

    def __hash__(self):
        return hash(tuple(self.gb))

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gb)

    # -- constructions --------------------------------------------------

    def __add__(self, other) -> "Ideal":
        if isinstance(other, Ideal):
            return Ideal(self.ring, self.gens + other.gens)
        return Ideal(self.ring, self.gens + tuple(other))

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens])

    def power(self, n: int) -> "Ideal":
        if n == 0:
            return Ideal(self.ring, [self.ring.one()])
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    def _elim_ring(self) -> PolyRing:
        r = self.ring
        name = "_t"
        while name in r.variables:
            name += "_"
        return PolyRing((name,) + r.variables, r.field, (1,) + r.degrees, order="elim")

    def intersect(self, other: "Ideal") -> "Ideal":
        """``I ∩ J`` as the t-free part of ``t·I + (1 - t)·J``."""
        if self.is_zero() or other.is_zero():
            return Ideal(self.ring, [])
        R = self._elim_ring()
        t = R.var(0)

        def up(f):
            return Polynomial(R, {(0,) + e: c for e, c in f.terms.items()})

        gens = [t * up(f) for f in self.gens] + [(1 - t) * up(g) for g in other.gens]
        out = [
            Polynomial(self.ring, {e[1:]: c for e, c in g.terms.items()})
            for g in buchberger(gens)
            if all(e[0] == 0 for e in g.terms)
        ]
        return Ideal(self.ring, out)

    def is_zero_dimensional(self) -> bool:
        if self.is_unit():
            return True
        lms = self.leading_monomials()
        return all(
            any(lm[i] > 0 and sum(lm) == lm[i] for lm in lms) for i in range(self.ring.nvars)
        )

    def colon(self, f) -> "Ideal":
        """``I : f`` for a polynomial, or ``I : J`` for an ideal ``J``."""
        if isinstance(f, Ideal):
            if f.is_zero():
                raise ValueError("colon by the zero ideal")
            if self.is_zero_dimensional():
                return self._colon_linear(list(f.gens))
            out = None
            for g in f.gens:
                c = self.colon(g)
                out = c if out is None else out.intersect(c)
            return out
        if isinstance(f, str):
            f = self.ring.parse(f)
        if f.is_zero():
            raise ValueError("colon by the zero polynomial")
        if self.is_zero():
            return Ideal(self.ring, [])
        if self.is_zero_dimensional():
            return self._colon_linear([f])
        return self.colon_by_elimination(f)

    def colon_by_elimination(self, f: Polynomial) -> "Ideal":
        inter = self.intersect(Ideal(self.ring, [f]))
        return Ideal(self.ring, [g.exact_div(f) for g in inter.gens])

    def _colon_linear(self, fs: list[Polynomial]) -> "Ideal":
        # kernel of the stacked multiplication maps on the finite quotient
        qb = self.quotient_basis().monomials
        if not qb:
            return Ideal(self.ring, [self.ring.one()])
        index = {m: i for i, m in enumerate(qb)}
        field = self.ring.field
        zero, one = field(0), field(1)
        n = len(qb)
        rows = []
        for f in fs:
            cols = []
            for m in qb:
                nf = self.normal_form(f.mul_monomial(m))
                v = [zero] * n
                for e, c in nf.terms.items():
                    v[index[e]] = c
                cols.append(v)
            rows.extend(linalg.transpose(cols, n))
        ker = linalg.kernel(rows, n, zero, one)
        extra = [Polynomial(self.ring, {qb[i]: c for i, c in enumerate(v) if c}) for v in ker]
        return Ideal(self.ring, list(self.gens) + extra)

    def saturation(self, J: "Ideal", return_steps: bool = False):
        """``I : J^∞``, iterating ``I : J`` until two consecutive ideals agree."""
        if J.is_zero():
            raise ValueError("saturation by the zero ideal")
        cur = self
        steps = 0
        while True:
            nxt = cur.colon(J)
            steps += 1
            if nxt == cur:
                break
            cur = nxt
        return (cur, steps) if return_steps else cur

    def saturation_by_element(self, f: Polynomial) -> "Ideal":
        return self.saturation(Ideal(self.ring, [f]))

    # -- dimension theory -----------------------------------------------

    def dimension(self) -> int:
        """Krull dimension of ``k[x]/I`` via independent sets modulo the leading ideal."""
        if self.is_unit():
            raise ValueError("empty ring: the ideal is the unit ideal")
        lms = self.leading_monomials()
        n = self.ring.nvars
        for size in range(n, -1, -1):
            for U in itertools.combinations(range(n), size):
                Us = set(U)
                if not any(all(i in Us for i, a in enumerate(lm) if a) for lm in lms):
                    return size
        return 0

    def quotient_basis(self) -> QuotientBasis:
        if not self.is_zero_dimensional():
            return QuotientBasis(False)
        if self.is_unit():
            return QuotientBasis(True, ())
        lms = self.leading_monomials()
        n = self.ring.nvars
        seen = set()
        frontier = [(0,) * n]
        while frontier:
            m = frontier.pop()
            if m in seen or any(_divides(lm, m) for lm in lms):
                continue
            seen.add(m)
            for i in range(n):
                e = list(m)
                e[i] += 1
                frontier.append(tuple(e))
        mons = sorted(seen, key=self.ring.key)
        return QuotientBasis(True, tuple(mons))

    def hilbert_function(self, e: int) -> int:
        if not self.is_homogeneous():
            raise ValueError("hilbert_function needs a homogeneous ideal")
        lms = self.leading_monomials()
        return sum(
            1 for m in self.ring.monomials_of_degree(e) if not any(_divides(lm, m) for lm in lms)
        )


def reduced_groebner_basis(ideal: Ideal, order: str | None = None) -> list[Polynomial]:
    if order is None or order == ideal.ring.order:
        return ideal.gb
    ring = ideal.ring.with_order(order)
    return buchberger([g.to_ring(ring) for g in ideal.gens])


def normal_form(f: Polynomial, ideal: Ideal) -> Polynomial:
    return ideal.normal_form(f)


def colon_ideal(ideal: Ideal, f) -> Ideal:
    return ideal.colon(f)


def saturation(ideal: Ideal, J: Ideal) -> Ideal:
    return ideal.saturation(J)


def krull_dimension(ideal: Ideal) -> int:
    return ideal.dimension()


def quotient_basis(ideal: Ideal) -> QuotientBasis:
    return ideal.quotient_basis()


def hilbert_function(ideal: Ideal, e: int) -> int:
    return ideal.hilbert_function(e)
