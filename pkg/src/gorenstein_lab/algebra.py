"""Standard graded algebras ``R = k[x]/I`` and their graded pieces.

Everything downstream (Koszul cohomology, resolutions, Ext) is linear algebra
on the pieces ``R_e``, whose basis is the standard monomials of degree ``e``
with respect to the reduced Gröbner basis of ``I``.
"""

from __future__ import annotations

import hashlib
import json
from functools import cached_property

from .field import Field
from .ideal import Ideal, _divides
from .polynomial import Exponent, Polynomial, PolyRing


class GradedAlgebra:
    """``k[x_1..x_n]/I`` with ``I`` homogeneous and contained in ``m = (x_1..x_n)``."""

    def __init__(self, ring: PolyRing, ideal_gens=()):
        self.ring = ring
        self.ideal = Ideal(ring, ideal_gens)
        for g in self.ideal.gens:
            if not g.is_homogeneous():
                raise ValueError("defining ideal must be homogeneous; %s is not" % g)
            if g.is_constant():
                raise ValueError("defining ideal must lie in the maximal ideal")
        self.m = Ideal.maximal(ring)
        self.field = ring.field
        self.zero = self.field(0)
        self.one = self.field(1)
        self._basis: dict[int, list[Exponent]] = {}
        self._pos: dict[int, dict[Exponent, int]] = {}
        self._nf_mono: dict[Exponent, dict] = {}
        self._mult: dict = {}
        self._lms = self.ideal.leading_monomials()
        self._gb = [(g.lm(), g.terms) for g in self.ideal.gb]
        self._depth = None

    @classmethod
    def from_spec(cls, spec: dict, field: Field | None = None) -> "GradedAlgebra":
        """Build from the ring-spec JSON object (``field``, ``vars``, ``degrees``, ``ideal``)."""
        if field is None:
            field = Field.from_json(spec.get("field", "Q"))
        ring = PolyRing(spec["vars"], field, spec.get("degrees"))
        alg = cls(ring, [ring.parse(t) for t in spec.get("ideal", [])])
        alg.spec = dict(spec)
        return alg

    def to_spec(self) -> dict:
        return {
            "field": self.field.to_json(),
            "vars": list(self.ring.variables),
            "degrees": list(self.ring.degrees),
            "ideal": [str(g) for g in self.ideal.gens],
        }

    def spec_hash(self) -> str:
        blob = json.dumps(self.to_spec(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.ideal.gens) or "0"
        return "%s[%s]/(%s)" % (self.field, ",".join(self.ring.variables), gens)

    # -- invariants -----------------------------------------------------

    @cached_property
    def dim(self) -> int:
        return self.ideal.dimension()

    @property
    def depth(self) -> int:
        if self._depth is None:
            from .koszul import depth

            self._depth = depth(self)
        return self._depth

    def element(self, f) -> Polynomial:
        if isinstance(f, str):
            f = self.ring.parse(f)
        elif not isinstance(f, Polynomial):
            f = self.ring.const(f)
        return f

    # -- graded pieces --------------------------------------------------

    def is_standard(self, m: Exponent) -> bool:
        return not any(_divides(lm, m) for lm in self._lms)

    def basis(self, e: int) -> list[Exponent]:
        b = self._basis.get(e)
        if b is None:
            b = [m for m in self.ring.monomials_of_degree(e) if self.is_standard(m)] if e >= 0 else []
            self._basis[e] = b
            self._pos[e] = {m: i for i, m in enumerate(b)}
        return b

    def piece_dim(self, e: int) -> int:
        return len(self.basis(e))

    def _nf_monomial(self, m: Exponent) -> dict:
        r = self._nf_mono.get(m)
        if r is not None:
            return r
        for lm, g in self._gb:
            if _divides(lm, m):
                shift = tuple(a - b for a, b in zip(m, lm))
                acc: dict = {}
                for e, c in g.items():
                    if e == lm:
                        continue
                    sub = self._nf_monomial(tuple(a + b for a, b in zip(e, shift)))
                    for s, v in sub.items():
                        nv = acc.get(s, 0) - c * v
                        if nv:
                            acc[s] = nv
                        else:
                            acc.pop(s, None)
                r = acc
                break
        else:
            r = {m: self.one}
        self._nf_mono[m] = r
        return r

    def nf(self, f: Polynomial) -> Polynomial:
        acc: dict = {}
        for m, c in f.terms.items():
            for s, v in self._nf_monomial(m).items():
                nv = acc.get(s, 0) + c * v
                if nv:
                    acc[s] = nv
                else:
                    acc.pop(s, None)
        return Polynomial(self.ring, acc)

    def vector(self, f: Polynomial, e: int) -> list:
        """Coordinates of the degree-``e`` part of ``f`` modulo ``I``."""
        self.basis(e)
        pos = self._pos[e]
        v = [self.zero] * len(pos)
        deg = self.ring.mono_degree
        for m, c in self.nf(f).terms.items():
            if deg(m) == e:
                v[pos[m]] = c
        return v

    def poly(self, v: list, e: int) -> Polynomial:
        b = self.basis(e)
        return Polynomial(self.ring, {b[i]: c for i, c in enumerate(v) if c})

    def mult_matrix(self, f: Polynomial, e: int) -> list[list]:
        """Matrix of multiplication by homogeneous ``f``: ``R_e -> R_{e + deg f}``.

        The zero polynomial has no degree; callers pass its intended degree
        through ``mult_matrix_deg``.
        """
        if f.is_zero():
            raise ValueError("use mult_matrix_deg for the zero map")
        return self.mult_matrix_deg(f, e, f.degree())

    def mult_matrix_deg(self, f: Polynomial, e: int, d: int) -> list[list]:
        key = (f, e, d)
        M = self._mult.get(key)
        if M is not None:
            return M
        src = self.basis(e)
        tgt = self.basis(e + d)
        M = [[self.zero] * len(src) for _ in tgt]
        if f and src and tgt:
            pos = self._pos[e + d]
            deg = self.ring.mono_degree
            for j, m in enumerate(src):
                acc: dict = {}
                for fe, c in f.terms.items():
                    if deg(fe) != d:
                        continue
                    prod = tuple(a + b for a, b in zip(fe, m))
                    for s, v in self._nf_monomial(prod).items():
                        acc[s] = acc.get(s, 0) + c * v
                for s, v in acc.items():
                    if v:
                        M[pos[s]][j] = v
        self._mult[key] = M
        return M

    def hilbert(self, e: int) -> int:
        return self.piece_dim(e)

    def is_zero(self, f: Polynomial) -> bool:
        return self.nf(f).is_zero()

    def quotient_ideal(self, extra) -> Ideal:
        """``I + (extra)`` as an ideal of the ambient polynomial ring."""
        if isinstance(extra, Ideal):
            extra = extra.gens
        return Ideal(self.ring, list(self.ideal.gens) + [self.element(f) for f in extra])
