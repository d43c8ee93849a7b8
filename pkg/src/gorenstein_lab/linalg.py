"""Exact dense linear algebra over a :class:`~gorenstein_lab.field.Field`.

Matrices are lists of rows; a matrix ``A`` with ``len(A) == m`` rows and
``n`` columns acts on column vectors of length ``n``.  Because an empty
matrix has no rows to carry its column count, most routines take ``ncols``
explicitly.
"""

from __future__ import annotations


def zeros(m: int, n: int, zero) -> list[list]:
    return [[zero] * n for _ in range(m)]


def transpose(A: list[list], ncols: int) -> list[list]:
    return [[row[j] for row in A] for j in range(ncols)]


def mat_vec(A: list[list], v: list, zero) -> list:
    out = []
    for row in A:
        s = zero
        for a, b in zip(row, v):
            if a and b:
                s = s + a * b
        out.append(s)
    return out


def mat_mul(A: list[list], B: list[list], ncols_b: int, zero) -> list[list]:
    out = []
    for row in A:
        acc = [zero] * ncols_b
        for a, brow in zip(row, B):
            if not a:
                continue
            for j, b in enumerate(brow):
                if b:
                    acc[j] = acc[j] + a * b
        out.append(acc)
    return out


def rref(rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form of the span of ``rows``.

    Returns only the nonzero rows, normalized with leading 1s, and the pivot
    column of each.
    """
    M = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(M):
            break
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        pr = [x * inv if x else x for x in M[r]]
        M[r] = pr
        nz = [j for j in range(c, ncols) if pr[j]]
        for i in range(len(M)):
            if i != r:
                f = M[i][c]
                if f:
                    row = M[i]
                    for j in nz:
                        row[j] = row[j] - f * pr[j]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(rows: list[list], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def kernel(A: list[list], ncols: int, zero, one) -> list[list]:
    """Basis of ``{v : A v = 0}``."""
    R, pivots = rref(A, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [zero] * ncols
        v[f] = one
        for row, p in zip(R, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(v)
    return basis


def column_space(A: list[list], ncols: int) -> list[list]:
    """Echelon basis (as vectors) of the span of the columns of ``A``."""
    if not A:
        return []
    return rref(transpose(A, ncols), len(A))[0]


def solve(A: list[list], b: list, ncols: int, zero):
    """One solution ``x`` of ``A x = b`` or ``None`` when inconsistent."""
    m = len(A)
    aug = [list(A[i]) + [b[i]] for i in range(m)]
    R, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [zero] * ncols
    for row, p in zip(R, pivots):
        x[p] = row[ncols]
    return x


class Span:
    """A subspace held in reduced echelon form, with membership and coordinates."""

    def __init__(self, vectors: list[list], dim: int):
        self.ambient = dim
        self.rows, self.pivots = rref(vectors, dim)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v: list) -> list:
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                for j in range(p, self.ambient):
                    if row[j]:
                        v[j] = v[j] - c * row[j]
        return v

    def contains(self, v: list) -> bool:
        return not any(self.reduce(v))

    def coords(self, v: list) -> list:
        """Coefficients of ``v`` (assumed inside) in the echelon basis."""
        return [v[p] for p in self.pivots]


class QuotientSpace:
    """``Z / B`` for subspaces ``B ⊆ Z`` of a common coordinate space.

    ``B`` is kept in reduced echelon form and the complement ``C`` in echelon
    form with zeros at the pivots of ``B``.  Reducing ``v ∈ Z`` by ``B``
    leaves a combination of ``C`` whose coefficients sit at ``C``'s pivots.
    """

    def __init__(self, Z: list[list], B: list[list], dim: int, zero):
        self.ambient = dim
        self.zero = zero
        brows, bpiv = rref(B, dim)
        self.boundary_rows = brows
        self.boundary_pivots = bpiv
        reduced = [self._reduce(z) for z in Z]
        crows, cpiv = rref(reduced, dim)
        self.reps = crows
        self.pivots = cpiv

    def _reduce(self, v: list) -> list:
        v = list(v)
        for row, p in zip(self.boundary_rows, self.boundary_pivots):
            c = v[p]
            if c:
                for j in range(p, self.ambient):
                    if row[j]:
                        v[j] = v[j] - c * row[j]
        return v

    @property
    def dim(self) -> int:
        return len(self.reps)

    def coords(self, v: list) -> list:
        if not self.reps:
            return []
        w = self._reduce(v)
        return [w[p] for p in self.pivots]

    def is_zero_class(self, v: list) -> bool:
        return not any(self.coords(v))
