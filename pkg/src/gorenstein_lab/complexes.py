"""Graded free complexes over ``R``, chain maps, and cohomology of ``Hom(F, R)``.

Conventions.  A free module ``F_k = ⊕_j R(-a_j)`` is stored as its list of
generator degrees ``a_j``.  A map ``F → G`` is a matrix with one row per
generator of ``G`` and one column per generator of ``F``; column ``g`` is the
image of generator ``g``.  In internal degree ``e``

* the chain side is ``(F_k)_e = ⊕_j R_{e - a_j}``;
* the cochain side is ``Hom(F_k, R)_e = ⊕_j R_{e + a_j}``.

Cohomology pieces are :class:`~gorenstein_lab.linalg.QuotientSpace` objects,
so a class is read off at the complement pivots of its cocycle.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .algebra import GradedAlgebra
from .local import StabilizationError
from .polynomial import Polynomial


class DegreeBoundExceeded(RuntimeError):
    """Cohomology did not vanish at the top of the computed degree window."""


class InternalConsistencyError(RuntimeError):
    """Two independent computations of the same invariant disagree."""


def poly_matmul(R: GradedAlgebra, A: list[list], B: list[list]) -> list[list]:
    """Product of polynomial matrices, entries reduced modulo ``I``."""
    zero = R.ring.zero()
    n = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [zero] * n
        for a, brow in zip(row, B):
            if not a:
                continue
            for j, b in enumerate(brow):
                if b:
                    acc[j] = acc[j] + a * b
        out.append([R.nf(x) for x in acc])
    return out


def poly_matrix_is_zero(R: GradedAlgebra, A: list[list]) -> bool:
    return all(R.nf(x).is_zero() for row in A for x in row)


def _poly_matrix_json(A):
    return [[str(x) for x in row] for row in A]


class FreeComplex:
    """Chain complex ``F_n → ... → F_1 → F_0`` of graded free ``R``-modules."""

    def __init__(self, algebra: GradedAlgebra, degrees: list[list[int]], diffs: dict[int, list[list]]):
        self.R = algebra
        self.degrees = [list(d) for d in degrees]
        self.diffs = dict(diffs)
        zero = algebra.ring.zero()
        for k in range(1, len(self.degrees)):
            if k not in self.diffs:
                self.diffs[k] = [[zero] * len(self.degrees[k]) for _ in self.degrees[k - 1]]

    @property
    def length(self) -> int:
        return len(self.degrees) - 1

    def rank(self, k: int) -> int:
        return len(self.degrees[k]) if 0 <= k < len(self.degrees) else 0

    def ranks(self) -> list[int]:
        return [len(d) for d in self.degrees]

    def d(self, k: int) -> list[list]:
        return self.diffs[k]

    def is_complex(self) -> bool:
        for k in range(2, len(self.degrees)):
            if not self.degrees[k] or not self.degrees[k - 2]:
                continue
            if not poly_matrix_is_zero(self.R, poly_matmul(self.R, self.diffs[k - 1], self.diffs[k])):
                return False
        return True

    def is_graded(self) -> bool:
        """Every differential entry is homogeneous of the degree its position demands."""
        for k in range(1, len(self.degrees)):
            for j, row in enumerate(self.diffs[k]):
                for g, x in enumerate(row):
                    x = self.R.nf(x)
                    if x and not (x.is_homogeneous() and x.degree() == self.degrees[k][g] - self.degrees[k - 1][j]):
                        return False
        return True

    def to_json(self) -> dict:
        return {
            "ranks": self.ranks(),
            "shifts": self.degrees,
            "differentials": {str(k): _poly_matrix_json(self.diffs[k]) for k in sorted(self.diffs)},
        }


class ChainMap:
    """Degree-preserving chain map ``source → target``; ``maps[k]`` is ``F_k → G_k``."""

    def __init__(self, source: FreeComplex, target: FreeComplex, maps: dict[int, list[list]]):
        self.source = source
        self.target = target
        self.maps = dict(maps)

    def levels(self) -> range:
        return range(min(len(self.source.degrees), len(self.target.degrees)))

    def commutes(self, upto: int | None = None) -> bool:
        R = self.source.R
        top = len(self.maps) - 1 if upto is None else upto
        for k in range(1, top + 1):
            if k not in self.maps or k - 1 not in self.maps:
                continue
            if not self.source.degrees[k]:
                continue
            lhs = poly_matmul(R, self.target.diffs[k], self.maps[k]) if self.target.rank(k) else None
            rhs = poly_matmul(R, self.maps[k - 1], self.source.diffs[k])
            if lhs is None:
                if not poly_matrix_is_zero(R, rhs):
                    return False
                continue
            diff = [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(lhs, rhs)]
            if not poly_matrix_is_zero(R, diff):
                return False
        return True

    def compose(self, other: "ChainMap") -> "ChainMap":
        """``self ∘ other``."""
        R = self.source.R
        maps = {}
        for k in self.maps:
            if k in other.maps:
                maps[k] = poly_matmul(R, self.maps[k], other.maps[k])
        return ChainMap(other.source, self.target, maps)

    def equals(self, other: "ChainMap") -> bool:
        R = self.source.R
        for k in set(self.maps) & set(other.maps):
            diff = [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.maps[k], other.maps[k])]
            if not poly_matrix_is_zero(R, diff):
                return False
        return True

    def to_json(self) -> dict:
        return {str(k): _poly_matrix_json(m) for k, m in sorted(self.maps.items())}


def _block_matrix(R: GradedAlgebra, M, row_pieces, col_pieces, deg_of_entry):
    """Dense block matrix whose (row, col) block is multiplication by ``M``'s entry.

    ``row_pieces``/``col_pieces`` are lists of graded-piece degrees, and
    ``deg_of_entry(r, c)`` is the degree the entry must have.
    """
    row_dims = [R.piece_dim(p) for p in row_pieces]
    col_dims = [R.piece_dim(p) for p in col_pieces]
    nrows, ncols = sum(row_dims), sum(col_dims)
    out = [[R.zero] * ncols for _ in range(nrows)]
    r0 = 0
    for r, (rp, rd) in enumerate(zip(row_pieces, row_dims)):
        c0 = 0
        for c, (cp, cd) in enumerate(zip(col_pieces, col_dims)):
            entry = M(r, c)
            if rd and cd and entry:
                blk = R.mult_matrix_deg(entry, cp, rp - cp)
                for i in range(rd):
                    src = blk[i]
                    dst = out[r0 + i]
                    for j in range(cd):
                        if src[j]:
                            dst[c0 + j] = src[j]
            c0 += cd
        r0 += rd
    return out, ncols


def hom_matrix(R: GradedAlgebra, M: list[list], src_degs: list[int], tgt_degs: list[int], e: int):
    """Cochain matrix of ``Hom(G, R)_e → Hom(F, R)_e`` induced by ``M: F → G``.

    ``src_degs`` are the generator degrees of ``F`` and ``tgt_degs`` those of
    ``G``.  Returns ``(matrix, ncols)``.
    """
    return _block_matrix(
        R,
        lambda g, j: M[j][g],
        [e + b for b in src_degs],
        [e + a for a in tgt_degs],
        None,
    )


def chain_matrix(R: GradedAlgebra, M: list[list], src_degs: list[int], tgt_degs: list[int], e: int):
    """Matrix of ``M: F → G`` on degree-``e`` pieces ``(F)_e → (G)_e``."""
    return _block_matrix(
        R,
        lambda j, g: M[j][g],
        [e - a for a in tgt_degs],
        [e - b for b in src_degs],
        None,
    )


def chain_vector(R: GradedAlgebra, polys: list[Polynomial], degs: list[int], e: int) -> list:
    out = []
    for f, a in zip(polys, degs):
        out.extend(R.vector(f, e - a))
    return out


def chain_polys(R: GradedAlgebra, v: list, degs: list[int], e: int) -> list[Polynomial]:
    out = []
    pos = 0
    for a in degs:
        n = R.piece_dim(e - a)
        out.append(R.poly(v[pos:pos + n], e - a))
        pos += n
    return out


class GradedMap:
    """Degree-preserving linear map between two :class:`GradedModule` objects."""

    def __init__(self, source: "GradedModule", target: "GradedModule", mats: dict[int, list[list]]):
        self.source = source
        self.target = target
        self.mats = mats

    def apply(self, e: int, v: list) -> list:
        M = self.mats.get(e)
        if M is None:
            return [self.source.R.zero] * self.target.dim(e)
        return linalg.mat_vec(M, v, self.source.R.zero)

    def rank(self) -> int:
        return sum(linalg.rank(M, self.source.dim(e)) for e, M in self.mats.items() if M)


class GradedModule:
    """Cohomology ``H^k(Hom(F, R))`` over a window of internal degrees.

    ``shifts`` are the generator degrees of ``F_k``; ``pieces[e]`` is the
    quotient of cocycles by coboundaries in degree ``e``.
    """

    def __init__(self, R: GradedAlgebra, shifts: list[int], pieces: dict, lo: int, hi: int, label: str = ""):
        self.R = R
        self.shifts = list(shifts)
        self.pieces = pieces
        self.lo = lo
        self.hi = hi
        self.label = label
        self._action: dict = {}
        self._socle = None

    def dim(self, e: int) -> int:
        p = self.pieces.get(e)
        return p.dim if p is not None else 0

    def dims(self) -> dict[int, int]:
        return {e: p.dim for e, p in sorted(self.pieces.items()) if p.dim}

    def total_dim(self) -> int:
        return sum(p.dim for p in self.pieces.values())

    def is_zero(self) -> bool:
        return self.total_dim() == 0

    def cochain_dim(self, e: int) -> int:
        return sum(self.R.piece_dim(e + a) for a in self.shifts)

    def validated(self, margin: int = 2) -> bool:
        """Top ``margin`` degrees of the window vanish."""
        return all(self.dim(e) == 0 for e in range(self.hi - margin + 1, self.hi + 1))

    def cochain_times(self, f: Polynomial, e: int, v: list) -> list:
        """Multiply a cochain in degree ``e`` by homogeneous ``f`` (block diagonal)."""
        d = f.degree()
        out = []
        pos = 0
        for a in self.shifts:
            n = self.R.piece_dim(e + a)
            blk = self.R.mult_matrix_deg(f, e + a, d)
            out.extend(linalg.mat_vec(blk, v[pos:pos + n], self.R.zero))
            pos += n
        return out

    def action(self, i: int, e: int) -> list[list]:
        """Matrix of the variable ``x_i``: ``H_e → H_{e + deg x_i}``."""
        key = (i, e)
        A = self._action.get(key)
        if A is not None:
            return A
        x = self.R.ring.var(i)
        d = self.R.ring.degrees[i]
        src = self.pieces.get(e)
        tgt = self.pieces.get(e + d)
        cols = []
        if src is not None and src.dim:
            for rep in src.reps:
                if tgt is None or not tgt.dim:
                    cols.append([])
                else:
                    cols.append(tgt.coords(self.cochain_times(x, e, rep)))
        n_t = tgt.dim if tgt is not None else 0
        A = [[cols[j][r] for j in range(len(cols))] for r in range(n_t)]
        self._action[key] = A
        return A

    def socle(self) -> dict[int, list[list]]:
        """Basis (in class coordinates) of ``{z : x_i z = 0 for all i}`` per degree."""
        if self._socle is None:
            out = {}
            for e, p in sorted(self.pieces.items()):
                if not p.dim:
                    continue
                rows = []
                for i in range(self.R.ring.nvars):
                    rows.extend(self.action(i, e))
                out[e] = linalg.kernel(rows, p.dim, self.R.zero, self.R.one)
            self._socle = {e: b for e, b in out.items() if b}
        return self._socle

    def socle_dim(self) -> int:
        return sum(len(b) for b in self.socle().values())

    def socle_representatives(self) -> dict[int, list[list]]:
        """Socle basis as cocycle vectors."""
        out = {}
        for e, basis in self.socle().items():
            reps = self.pieces[e].reps
            out[e] = [
                [sum((c * r[j] for c, r in zip(v, reps) if c), self.R.zero) for j in range(len(reps[0]))]
                for v in basis
            ]
        return out

    def to_json(self) -> dict:
        return {"label": self.label, "dims": {str(e): d for e, d in self.dims().items()},
                "window": [self.lo, self.hi], "socle_dim": self.socle_dim()}


def hom_cohomology(R: GradedAlgebra, F: FreeComplex, k: int, lo: int, hi: int, label: str = "") -> GradedModule:
    """``H^k(Hom(F, R))`` in internal degrees ``lo..hi``."""
    shifts = F.degrees[k] if k < len(F.degrees) else []
    pieces = {}
    for e in range(lo, hi + 1):
        n = sum(R.piece_dim(e + a) for a in shifts)
        if n == 0:
            continue
        if k + 1 < len(F.degrees) and F.degrees[k + 1]:
            delta, _ = hom_matrix(R, F.diffs[k + 1], F.degrees[k + 1], shifts, e)
            Z = linalg.kernel(delta, n, R.zero, R.one) if delta else _identity(R, n)
        else:
            Z = _identity(R, n)
        if k >= 1 and F.degrees[k - 1]:
            prev, pn = hom_matrix(R, F.diffs[k], shifts, F.degrees[k - 1], e)
            B = linalg.transpose(prev, pn) if pn else []
        else:
            B = []
        pieces[e] = linalg.QuotientSpace(Z, B, n, R.zero)
    return GradedModule(R, shifts, pieces, lo, hi, label)


def _identity(R, n):
    return [[R.one if i == j else R.zero for j in range(n)] for i in range(n)]


def induced_map(src: GradedModule, tgt: GradedModule, M: list[list], src_degs_of_map, tgt_degs_of_map) -> GradedMap:
    """Map on cohomology induced by ``Hom(G_k, R) → Hom(F_k, R)`` from ``M: F_k → G_k``.

    ``src`` is the cohomology of ``Hom(G, R)`` and ``tgt`` that of ``Hom(F, R)``;
    the degree lists describe ``F_k`` (``src_degs_of_map``) and ``G_k``.
    """
    R = src.R
    mats = {}
    for e, p in src.pieces.items():
        if not p.dim:
            continue
        q = tgt.pieces.get(e)
        if q is None or not q.dim:
            continue
        H, _ = hom_matrix(R, M, src_degs_of_map, tgt_degs_of_map, e)
        cols = [q.coords(linalg.mat_vec(H, rep, R.zero)) for rep in p.reps]
        mats[e] = [[cols[j][r] for j in range(len(cols))] for r in range(q.dim)]
    return GradedMap(src, tgt, mats)


@dataclass
class DirectSystemRecord:
    """Socle data of a direct system ``M_1 → M_2 → ...`` and its limit.

    ``image_ranks[(t, T)]`` is the rank of ``Soc M_t → M_T``.  The limit's
    socle dimension is the common value of these ranks over a
    ``window``-by-``window`` block of pairs; ``image_socle_dims[t]`` is the
    last observed rank of ``Soc M_t`` in the system, i.e. the dimension of
    its image in the limit.
    """

    indices: list = field(default_factory=list)
    socle_dims: dict = field(default_factory=dict)
    module_dims: dict = field(default_factory=dict)
    image_ranks: dict = field(default_factory=dict)
    image_socle_dims: dict = field(default_factory=dict)
    limit_socle_dim: int | None = None
    stabilized_at: int | None = None
    window: int = 2
    heuristic: bool = True

    def surjective_from(self) -> int | None:
        """Least ``t0`` with the socle map onto the limit surjective for every observed ``t >= t0``."""
        if self.limit_socle_dim is None:
            return None
        if self.limit_socle_dim == 0:
            return 0
        ts = sorted(self.image_socle_dims)
        t0 = None
        for t in reversed(ts):
            if self.image_socle_dims[t] == self.limit_socle_dim:
                t0 = t
            else:
                break
        return t0

    def to_json(self) -> dict:
        return {
            "indices": self.indices,
            "socle_dims": {str(t): v for t, v in self.socle_dims.items()},
            "image_socle_dims": {str(t): v for t, v in self.image_socle_dims.items()},
            "limit_socle_dim": self.limit_socle_dim,
            "stabilized_at": self.stabilized_at,
            "window": self.window,
            "heuristic_stable": self.heuristic,
        }


def direct_system_socle(module_at, map_at, window: int = 2, start: int = 1, max_index: int = 12) -> DirectSystemRecord:
    """Stabilized socle dimension of ``lim M_t``.

    ``module_at(t)`` builds ``M_t``; ``map_at(t, M_t, M_{t+1})`` the
    :class:`GradedMap` ``M_t → M_{t+1}``.  Socle bases of every ``M_t`` are
    pushed forward step by step and their ranks recorded.
    """
    if window < 1:
        raise ValueError("window must be positive")
    rec = DirectSystemRecord(window=window)
    modules = {}
    pushed: dict[int, dict[int, list]] = {}
    for N in range(start, max_index + 1):
        M = module_at(N)
        modules[N] = M
        rec.indices.append(N)
        rec.module_dims[N] = M.total_dim()
        rec.socle_dims[N] = M.socle_dim()
        if N - 1 in modules:
            f = map_at(N - 1, modules[N - 1], M)
            for t in pushed:
                pushed[t] = {e: [f.apply(e, v) for v in vs] for e, vs in pushed[t].items()}
            del modules[N - 1]
        pushed[N] = {e: list(vs) for e, vs in M.socle().items()}
        for t, vecs in pushed.items():
            rec.image_ranks[(t, N)] = sum(
                linalg.rank(vs, M.dim(e)) for e, vs in vecs.items() if vs and M.dim(e)
            )
        t0 = N - 2 * window + 1
        if t0 >= start:
            vals = {
                rec.image_ranks[(t, T)]
                for t in range(t0, t0 + window)
                for T in range(t0 + window, t0 + 2 * window)
            }
            if len(vals) == 1:
                rec.limit_socle_dim = vals.pop()
                rec.stabilized_at = t0
                for t in range(start, N - window + 1):
                    rec.image_socle_dims[t] = rec.image_ranks[(t, N)]
                return rec
    raise StabilizationError("direct system did not stabilize by index %d" % max_index, rec)
