"""Koszul complexes, Koszul cohomology of ``R``, and local cohomology socles.

``H^i_m(R)`` is approached as the direct limit of ``H^i(x^t; R)`` along the
maps induced by the chain maps ``K(x^t) → K(x^s)`` that multiply the
component indexed by ``S`` with ``prod_{j in S} x_j^(t-s)``.
"""

from __future__ import annotations

import itertools
import math
import random

from . import linalg
from .algebra import GradedAlgebra
from .complexes import (
    ChainMap,
    DegreeBoundExceeded,
    DirectSystemRecord,
    FreeComplex,
    GradedModule,
    InternalConsistencyError,
    direct_system_socle,
    hom_cohomology,
    induced_map,
)
from .local import (
    ParameterSequence,
    SocleBasis,
    StabilizationError,
    as_sequence,
    is_regular_sequence,
    limit_closure_chain,
    random_form,
    random_homogeneous_sop,
)


def _subsets(r: int, k: int) -> list[tuple]:
    return list(itertools.combinations(range(r), k))


def koszul_complex(R: GradedAlgebra, seq) -> FreeComplex:
    """``K(x_1) ⊗ ... ⊗ K(x_r)`` with ``e_S ↦ Σ (-1)^pos x_j e_{S∖j}``."""
    seq = as_sequence(R, seq)
    for f in seq:
        if f.is_zero():
            raise ValueError("Koszul complex of a zero element")
        if not f.is_homogeneous():
            raise ValueError("graded Koszul complex needs homogeneous elements; %s is not" % f)
    r = len(seq)
    degs = [f.degree() for f in seq]
    subsets = [_subsets(r, k) for k in range(r + 1)]
    degrees = [[sum(degs[j] for j in S) for S in subsets[k]] for k in range(r + 1)]
    zero = R.ring.zero()
    diffs = {}
    for k in range(1, r + 1):
        index = {S: i for i, S in enumerate(subsets[k - 1])}
        M = [[zero] * len(subsets[k]) for _ in subsets[k - 1]]
        for col, S in enumerate(subsets[k]):
            for pos, j in enumerate(S):
                T = S[:pos] + S[pos + 1:]
                x = R.nf(seq.elements[j])
                M[index[T]][col] = x if pos % 2 == 0 else -x
        diffs[k] = M
    K = FreeComplex(R, degrees, diffs)
    K.sequence = seq
    return K


def koszul_connecting_map(R: GradedAlgebra, seq, s: int, t: int) -> ChainMap:
    """Chain map ``K(x^t) → K(x^s)`` for ``1 <= s <= t``."""
    if not 1 <= s <= t:
        raise ValueError("need 1 <= s <= t, got s=%d t=%d" % (s, t))
    seq = as_sequence(R, seq)
    r = len(seq)
    src = koszul_complex(R, seq.power(t))
    tgt = koszul_complex(R, seq.power(s))
    zero = R.ring.zero()
    maps = {}
    for k in range(r + 1):
        subs = _subsets(r, k)
        M = [[zero] * len(subs) for _ in subs]
        for i, S in enumerate(subs):
            f = R.ring.one()
            for j in S:
                f = f * seq.elements[j] ** (t - s)
            M[i][i] = R.nf(f)
        maps[k] = M
    return ChainMap(src, tgt, maps)


def _top_degree_of_quotient(R: GradedAlgebra, elems) -> int:
    qb = R.quotient_ideal(list(elems)).quotient_basis()
    if not qb.finite:
        raise ValueError("sequence does not generate an m-primary ideal")
    if not qb.monomials:
        return 0
    return max(R.ring.mono_degree(m) for m in qb.monomials)


def koszul_cohomology(R: GradedAlgebra, seq, i: int, bound: int | None = None, max_retries: int = 4) -> GradedModule:
    """``H^i(x; R)`` as a graded module, with the top of the window validated to vanish.

    ``bound`` is the highest internal degree computed; by default the top
    degree of ``R/(x)`` plus 2, doubled on failure.
    """
    seq = as_sequence(R, seq)
    K = koszul_complex(R, seq)
    r = len(seq)
    if not 0 <= i <= r:
        return GradedModule(R, [], {}, 0, -1, "H^%d" % i)
    lo = -max(K.degrees[i])
    if bound is None:
        try:
            top = _top_degree_of_quotient(R, seq.elements)
        except ValueError:
            top = sum(seq.degrees()) + max(R.ring.degrees)
        bound = top + 2
    for _ in range(max_retries):
        M = hom_cohomology(R, K, i, lo, bound, label="H^%d(x;R)" % i)
        if M.validated():
            M.sequence = seq
            M.complex = K
            return M
        bound = 2 * bound + 2
    raise DegreeBoundExceeded("H^%d(x;R) nonzero at the top of degree window %d" % (i, bound))


def socle(M: GradedModule) -> SocleBasis:
    reps = []
    for e, vs in M.socle_representatives().items():
        reps.extend((e, v) for v in vs)
    return SocleBasis(reps)


def _koszul_system(R: GradedAlgebra, seq: ParameterSequence, i: int):
    cache = {}

    def module_at(t):
        M = koszul_cohomology(R, seq.power(t), i)
        cache[t] = M
        return M

    def map_at(t, Mt, Mt1):
        phi = koszul_connecting_map(R, seq, t, t + 1)
        return induced_map(Mt, Mt1, phi.maps[i], phi.source.degrees[i], phi.target.degrees[i])

    return module_at, map_at


def local_cohomology_socles(
    R: GradedAlgebra, i: int, window: int = 2, seq=None, seed: int = 0, max_index: int = 12
) -> DirectSystemRecord:
    """``dim Soc H^i_m(R)`` through the Koszul direct system of a homogeneous sop."""
    if seq is None:
        seq = random_homogeneous_sop(R, 1, seed=seed)
    seq = as_sequence(R, seq)
    if len(seq) == 0:
        # zero-dimensional: H^0_m(R) = R and the system is constant
        M = koszul_cohomology(R, seq, 0)
        rec = DirectSystemRecord(window=window)
        dim = M.socle_dim() if i == 0 else 0
        rec.indices = [1]
        rec.socle_dims = {1: dim}
        rec.image_socle_dims = {1: dim}
        rec.limit_socle_dim = dim
        rec.stabilized_at = 1
        rec.heuristic = False
        return rec
    if i > len(seq):
        rec = DirectSystemRecord(window=window, limit_socle_dim=0, stabilized_at=1, heuristic=False)
        return rec
    module_at, map_at = _koszul_system(R, seq, i)
    rec = direct_system_socle(module_at, map_at, window=window, max_index=max_index)
    rec.sequence = seq
    return rec


def depth(R: GradedAlgebra, seq=None, seed: int = 0) -> int:
    """Least ``i`` with ``H^i(x; R) ≠ 0`` for a homogeneous sop ``x``."""
    if seq is None:
        seq = random_homogeneous_sop(R, 1, seed=seed)
    seq = as_sequence(R, seq)
    for i in range(len(seq) + 1):
        if not koszul_cohomology(R, seq, i).is_zero():
            return i
    raise InternalConsistencyError("all Koszul cohomology of a sop vanished")


def _generic_degree(R: GradedAlgebra) -> int:
    return math.lcm(*R.ring.degrees) if R.ring.nvars else 1


def greedy_regular_sequence(R: GradedAlgebra, seed: int = 0, tries: int = 4) -> ParameterSequence:
    """Extend a regular sequence by random forms, testing regularity by limit closure."""
    rng = random.Random(seed)
    D = _generic_degree(R)
    elems: list = []
    while len(elems) < R.dim:
        for _ in range(tries):
            f = random_form(R, D, rng)
            if f.is_zero():
                continue
            if is_regular_sequence(R, elems + [f]):
                elems.append(f)
                break
        else:
            break
    return ParameterSequence(tuple(elems))


def phi_kernel(R: GradedAlgebra, seq, t: int, window: int = 2, max_steps: int = 12) -> int:
    """``dim_k ker(R/(x^t) → H^r_(x)(R))``, computed twice and cross-checked.

    Once as ``limclosure(x^t)/(x^t)`` and once as the eventual kernel of the
    Koszul maps ``H^r(x^t; R) → H^r(x^T; R)``.
    """
    seq = as_sequence(R, seq)
    r = len(seq)
    st = seq.power(t)
    lc = limit_closure_chain(R, st).ideal
    base = R.quotient_ideal(st.elements)
    via_closure = len(base.quotient_basis()) - len(lc.quotient_basis())
    via_limit = system_kernel_dim(R, seq, r, t, window, max_steps)
    if via_closure != via_limit:
        raise InternalConsistencyError(
            "phi_t kernel mismatch: limit closure gives %d, direct limit gives %d" % (via_closure, via_limit)
        )
    return via_closure


def system_kernel_dim(R: GradedAlgebra, seq: ParameterSequence, i: int, t: int, window: int = 2, max_steps: int = 12) -> int:
    """Eventual ``dim ker(H^i(x^t) → H^i(x^T))`` as ``T`` grows."""
    module_at, map_at = _koszul_system(R, seq, i)
    M = module_at(t)
    pushed = {e: linalg_identity(R, p.dim) for e, p in M.pieces.items() if p.dim}
    total = M.total_dim()
    history = []
    cur = M
    for T in range(t + 1, t + max_steps + 1):
        nxt = module_at(T)
        f = map_at(T - 1, cur, nxt)
        pushed = {e: [f.apply(e, v) for v in vs] for e, vs in pushed.items()}
        cur = nxt
        rk = sum(linalg.rank(vs, cur.dim(e)) for e, vs in pushed.items() if vs and cur.dim(e))
        history.append(total - rk)
        if len(history) > window and len(set(history[-(window + 1):])) == 1:
            return history[-1]
    raise StabilizationError("kernel of the Koszul system did not stabilize", history)


def linalg_identity(R: GradedAlgebra, n: int) -> list[list]:
    return [[R.one if i == j else R.zero for j in range(n)] for i in range(n)]
