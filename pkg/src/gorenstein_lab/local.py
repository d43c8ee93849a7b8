"""The local ring at the irrelevant ideal: parameters, socles, limit closure.

All ideals here are ideals of the ambient polynomial ring that contain the
defining ideal of ``R``; an ideal ``Q`` of ``R`` is passed around as its
preimage ``I + Q``.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field as dc_field

from . import linalg
from .algebra import GradedAlgebra
from .ideal import Ideal
from .polynomial import Polynomial

log = logging.getLogger(__name__)


class StabilizationError(RuntimeError):
    """An increasing chain or direct system did not stabilize within the step limit."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class NotMPrimaryError(ValueError):
    pass


@dataclass(frozen=True)
class ParameterSequence:
    elements: tuple

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def homogeneous(self) -> bool:
        return all(f.is_homogeneous() for f in self.elements)

    def power(self, t: int) -> "ParameterSequence":
        return ParameterSequence(tuple(f**t for f in self.elements))

    def degrees(self) -> list[int]:
        return [f.degree() for f in self.elements]

    def describe(self) -> str:
        return "(" + ", ".join(str(f) for f in self.elements) + ")"


def as_sequence(R: GradedAlgebra, seq) -> ParameterSequence:
    if isinstance(seq, ParameterSequence):
        return seq
    if isinstance(seq, str):
        seq = [s for s in seq.split(",") if s.strip()]
    return ParameterSequence(tuple(R.element(f) for f in seq))


@dataclass
class SocleBasis:
    representatives: list = dc_field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.representatives)


def _in_m(f: Polynomial) -> bool:
    return not f.constant_term()


def local_part(J: Ideal) -> Ideal:
    """Contraction of ``J k[x]_m`` back to ``k[x]``, for the origin ``m``.

    Homogeneous ideals are returned unchanged (every associated prime sits
    inside ``m``).  Otherwise components avoiding the origin are removed by
    saturating with elements that are units at the origin.
    """
    ring = J.ring
    if J.is_unit():
        raise ValueError("local_part of the unit ideal")
    if J.is_homogeneous():
        return J
    m = Ideal.maximal(ring)
    S = J.saturation(m)
    if S.is_unit():
        return J
    if (S + m).is_unit():
        # the origin is an isolated point of V(J): keep its primary component
        return J.saturation(S)
    # origin lies on a positive-dimensional component; strip visible unit factors
    units = []
    for g in list(S.gb) + list(J.gb):
        for fac in _factors(g):
            if fac.constant_term() and not fac.is_constant():
                units.append(fac)
    out = J
    for u in units:
        out = out.saturation_by_element(u)
    return out


def _factors(f: Polynomial) -> list[Polynomial]:
    import sympy

    ring = f.ring
    if not ring.field.is_rational:
        return [f]
    syms = sympy.symbols(ring.variables)
    if len(ring.variables) == 1:
        syms = (syms,) if not isinstance(syms, tuple) else syms
    expr = sum(
        sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[s**a for s, a in zip(syms, e)])
        for e, c in f.terms.items()
    )
    _, facs = sympy.factor_list(sympy.expand(expr), *syms)
    out = []
    for fac, _mult in facs:
        P = sympy.Poly(fac, *syms)
        out.append(ring.from_dict({tuple(m): ring.field(sympy.Rational(c).p) / sympy.Rational(c).q
                                   for m, c in zip(P.monoms(), P.coeffs())}))
    return out


def is_system_of_parameters(R: GradedAlgebra, seq) -> bool:
    seq = as_sequence(R, seq)
    for f in seq:
        if not _in_m(f):
            raise ValueError("parameter %s has a nonzero constant term" % f)
    if len(seq) != R.dim:
        return False
    J = R.quotient_ideal(seq.elements)
    return local_part(J).quotient_basis().finite


def socle_of_quotient(J: Ideal) -> SocleBasis:
    """Socle of the finite-length ``k[x]/J`` as polynomial representatives."""
    qb = J.quotient_basis()
    if not qb.finite:
        raise NotMPrimaryError("quotient is not of finite length")
    mons = qb.monomials
    n = len(mons)
    if n == 0:
        return SocleBasis([])
    ring = J.ring
    field = ring.field
    zero, one = field(0), field(1)
    index = {m: i for i, m in enumerate(mons)}
    rows = []
    for x in ring.gens():
        cols = []
        for mm in mons:
            v = [zero] * n
            for e, c in J.normal_form(x.mul_monomial(mm)).terms.items():
                v[index[e]] = c
            cols.append(v)
        rows.extend(linalg.transpose(cols, n))
    ker = linalg.kernel(rows, n, zero, one)
    reps = [Polynomial(ring, {mons[i]: c for i, c in enumerate(v) if c}) for v in ker]
    return SocleBasis(reps)


def _m_primary_part(R: GradedAlgebra, Q) -> Ideal:
    if isinstance(Q, Ideal):
        Q = Q.gens
    J = local_part(R.quotient_ideal(list(Q)))
    if not J.quotient_basis().finite:
        raise NotMPrimaryError("ideal is not m-primary")
    return J


def socle_basis(R: GradedAlgebra, Q) -> SocleBasis:
    return socle_of_quotient(_m_primary_part(R, Q))


def index_of_reducibility(R: GradedAlgebra, Q) -> int:
    """``dim_k Hom(k, R/Q)`` for an m-primary ideal ``Q`` of ``R``."""
    return socle_basis(R, Q).dimension


@dataclass
class LimitClosure:
    ideal: Ideal
    chain: list
    stabilized_at: int
    heuristic: bool = True


def limit_closure_chain(R: GradedAlgebra, seq, max_steps: int = 40) -> LimitClosure:
    """Union of ``(I + (x_1^{n+1},..,x_r^{n+1})) : (x_1...x_r)^n``, tracked term by term.

    Stops once three consecutive terms coincide.
    """
    seq = as_sequence(R, seq)
    if len(seq) == 0:
        return LimitClosure(R.ideal, [R.ideal], 0)
    for f in seq:
        if f.is_zero() or not _in_m(f):
            raise ValueError("limit closure needs nonzero elements of m")
    prod = R.ring.one()
    for f in seq:
        prod = prod * f
    chain = []
    for n in range(max_steps):
        J = R.quotient_ideal([f ** (n + 1) for f in seq])
        C = J.colon(prod**n) if n else J
        chain.append(C)
        if len(chain) >= 3 and chain[-1] == chain[-2] == chain[-3]:
            return LimitClosure(chain[-1], chain, n - 2)
    raise StabilizationError("limit closure did not stabilize in %d steps" % max_steps, chain)


def limit_closure(R: GradedAlgebra, seq) -> Ideal:
    return limit_closure_chain(R, seq).ideal


def is_regular_sequence(R: GradedAlgebra, seq) -> bool:
    """Regularity of ``seq`` on ``R``, decided by limit closure equal to ``I + (seq)``."""
    seq = as_sequence(R, seq)
    if len(seq) == 0:
        return True
    return limit_closure(R, seq) == R.quotient_ideal(seq.elements)


class SamplingError(RuntimeError):
    pass


def random_form(R: GradedAlgebra, degree: int, rng: random.Random, bound: int = 5) -> Polynomial:
    """Random homogeneous form of ``degree`` with integer coefficients in [-bound, bound], reduced mod I."""
    terms = {}
    for mono in R.basis(degree):
        c = rng.randint(-bound, bound)
        if c:
            terms[mono] = R.field(c)
    return Polynomial(R.ring, terms)


def random_homogeneous_sop(
    R: GradedAlgebra,
    min_degree: int = 1,
    seed: int = 0,
    max_tries: int = 50,
    bound: int = 5,
    count: int | None = None,
) -> ParameterSequence:
    """Seeded random homogeneous system of parameters with all degrees >= ``min_degree``.

    ``count`` overrides the number of elements (default ``dim R``), which
    yields m-primary sequences longer than a system of parameters.
    """
    if min_degree < 1:
        raise ValueError("min_degree must be at least 1")
    if R.field.p is not None and R.field.p < 50:
        log.warning("sampling over the small field F_%d may fail often", R.field.p)
    d = R.dim
    r = d if count is None else count
    if r == 0:
        return ParameterSequence(())
    rng = random.Random(seed)
    for attempt in range(max_tries):
        # bump the degree if R has no forms of the requested degree
        # a multiple of every variable degree, so that each variable has a pure power in play
        step = math.lcm(*R.ring.degrees)
        D = -(-min_degree // step) * step
        degs = [D] * r
        elems = tuple(random_form(R, D, rng, bound) for D in degs)
        if any(f.is_zero() for f in elems):
            continue
        J = R.quotient_ideal(elems)
        if J.quotient_basis().finite and (count is not None or len(elems) == d):
            return ParameterSequence(elems)
    raise SamplingError(
        "no system of parameters of degree >= %d found in %d tries for %r" % (min_degree, max_tries, R)
    )
