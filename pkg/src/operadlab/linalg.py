"""Exact linear algebra over the rationals.

Everything downstream (homology, kernels, quotients, spectral sequence
pages) reduces to the four operations in this module.  Matrices are stored
sparsely as ``(row, col) -> Fraction`` maps; elimination works on sparse
rows, so the large-but-sparse coboundary matrices stay cheap.

Pivoting is deterministic (leftmost column, smallest row index) so bases
are reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

Vector = list[Fraction]


class NoSolution(Exception):
    """Raised when a linear system M x = b has no solution."""


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def vec(entries: Iterable) -> Vector:
    return [_frac(x) for x in entries]


def zero_vec(n: int) -> Vector:
    return [Fraction(0)] * n


def vec_add(a: Vector, b: Vector) -> Vector:
    return [x + y for x, y in zip(a, b, strict=True)]


def vec_sub(a: Vector, b: Vector) -> Vector:
    return [x - y for x, y in zip(a, b, strict=True)]


def vec_scale(c, a: Vector) -> Vector:
    c = _frac(c)
    return [c * x for x in a]


def is_zero_vec(a: Vector) -> bool:
    return all(x == 0 for x in a)


@dataclass(frozen=True)
class RationalMatrix:
    """Sparse exact-rational matrix.  Immutable; no stored zeros."""

    rows: int
    cols: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r},{c}) out of bounds")
            v = _frac(v)
            if v != 0:
                clean[(r, c)] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_rows(cls, data: Sequence[Sequence]) -> "RationalMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries = {}
        for r, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for c, v in enumerate(row):
                v = _frac(v)
                if v != 0:
                    entries[(r, c)] = v
        return cls(rows, cols, entries)

    @classmethod
    def from_columns(cls, columns: Sequence[Vector], nrows: int) -> "RationalMatrix":
        entries = {}
        for c, col in enumerate(columns):
            if len(col) != nrows:
                raise ValueError("column length mismatch")
            for r, v in enumerate(col):
                if v != 0:
                    entries[(r, c)] = _frac(v)
        return cls(nrows, len(columns), entries)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, {})

    def __getitem__(self, rc) -> Fraction:
        return self.entries.get(rc, Fraction(0))

    def row(self, r: int) -> dict:
        return {c: v for (rr, c), v in self.entries.items() if rr == r}

    def to_rows(self) -> list[Vector]:
        data = [zero_vec(self.cols) for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            data[r][c] = v
        return data

    def column(self, c: int) -> Vector:
        out = zero_vec(self.rows)
        for (r, cc), v in self.entries.items():
            if cc == c:
                out[r] = v
        return out

    def matvec(self, x: Sequence) -> Vector:
        if len(x) != self.cols:
            raise ValueError("dimension mismatch")
        x = vec(x)
        out = zero_vec(self.rows)
        for (r, c), v in self.entries.items():
            if x[c] != 0:
                out[r] += v * x[c]
        return out

    def matmul(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        by_row: list[dict] = [dict() for _ in range(other.rows)]
        for (r, c), v in other.entries.items():
            by_row[r][c] = v
        entries: dict = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row[k].items():
                key = (r, c)
                s = entries.get(key, Fraction(0)) + v * w
                if s == 0:
                    entries.pop(key, None)
                else:
                    entries[key] = s
        return RationalMatrix(self.rows, other.cols, entries)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()}
        )

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))


def _sparse_rows(M: RationalMatrix) -> list[dict]:
    rows: list[dict] = [dict() for _ in range(M.rows)]
    for (r, c), v in M.entries.items():
        rows[r][c] = v
    return rows


def row_reduce(M: RationalMatrix) -> tuple[RationalMatrix, list[int], RationalMatrix]:
    """Reduced row-echelon form.

    Returns ``(R, pivots, T)`` with ``T @ M == R`` and ``pivots`` the pivot
    columns in increasing order.
    """
    work = _sparse_rows(M)
    # transform rows, augmented identity
    trans: list[dict] = [{r: Fraction(1)} for r in range(M.rows)]
    pivots: list[int] = []
    pivot_row_of: list[int] = []  # parallel to pivots
    next_row = 0
    for col in range(M.cols):
        # find pivot: smallest row index >= next_row with nonzero entry in col
        pr = None
        for r in range(next_row, M.rows):
            if work[r].get(col, 0) != 0:
                pr = r
                break
        if pr is None:
            continue
        if pr != next_row:
            work[next_row], work[pr] = work[pr], work[next_row]
            trans[next_row], trans[pr] = trans[pr], trans[next_row]
        # normalize
        inv = Fraction(1) / work[next_row][col]
        if inv != 1:
            work[next_row] = {c: v * inv for c, v in work[next_row].items()}
            trans[next_row] = {c: v * inv for c, v in trans[next_row].items()}
        prow, trow = work[next_row], trans[next_row]
        # eliminate everywhere else
        for r in range(M.rows):
            if r == next_row:
                continue
            f = work[r].get(col)
            if not f:
                continue
            wr, tr = work[r], trans[r]
            for c, v in prow.items():
                s = wr.get(c, Fraction(0)) - f * v
                if s == 0:
                    wr.pop(c, None)
                else:
                    wr[c] = s
            for c, v in trow.items():
                s = tr.get(c, Fraction(0)) - f * v
                if s == 0:
                    tr.pop(c, None)
                else:
                    tr[c] = s
        pivots.append(col)
        pivot_row_of.append(next_row)
        next_row += 1
        if next_row == M.rows:
            break
    R = RationalMatrix(
        M.rows, M.cols, {(r, c): v for r, row in enumerate(work) for c, v in row.items()}
    )
    T = RationalMatrix(
        M.rows, M.rows, {(r, c): v for r, row in enumerate(trans) for c, v in row.items()}
    )
    return R, pivots, T


def rank(M: RationalMatrix) -> int:
    return len(row_reduce(M)[1])


def kernel_basis(M: RationalMatrix) -> list[Vector]:
    """Basis of ker M, one vector per free column (deterministic)."""
    R, pivots, _ = row_reduce(M)
    pivot_set = set(pivots)
    rows = _sparse_rows(R)
    basis = []
    for free in range(M.cols):
        if free in pivot_set:
            continue
        v = zero_vec(M.cols)
        v[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            coeff = rows[i].get(free)
            if coeff:
                v[pc] = -coeff
        basis.append(v)
    return basis


def solve_particular(M: RationalMatrix, b: Sequence) -> Vector:
    """One solution of M x = b; raises NoSolution if b is not in the image."""
    if len(b) != M.rows:
        raise ValueError("rhs length mismatch")
    R, pivots, T = row_reduce(M)
    tb = T.matvec(vec(b))
    # rows beyond the pivot rows of R must have zero rhs
    for r in range(len(pivots), M.rows):
        if tb[r] != 0:
            raise NoSolution("target not in the image")
    x = zero_vec(M.cols)
    for i, pc in enumerate(pivots):
        x[pc] = tb[i]
    return x


def image_basis(M: RationalMatrix) -> list[Vector]:
    """Basis of the column space, as columns of M at pivot positions."""
    _, pivots, _ = row_reduce(M.transpose().transpose())
    return [M.column(c) for c in pivots]


class QuotientSpace:
    """Ambient rational space modulo the span of given vectors.

    ``representatives`` complete the subspace to a basis of the ambient
    space; ``reduce`` returns coordinates with respect to them, vanishing
    exactly on the subspace span.
    """

    def __init__(self, ambient_dim: int, subspace: Sequence[Vector]):
        for v in subspace:
            if len(v) != ambient_dim:
                raise ValueError("subspace vector length mismatch")
        self.ambient_dim = ambient_dim
        M = RationalMatrix.from_rows([vec(v) for v in subspace]) if subspace else None
        if M is None:
            self._rref_rows: list[dict] = []
            self._pivots: list[int] = []
        else:
            R, pivots, _ = row_reduce(M)
            self._rref_rows = _sparse_rows(R)[: len(pivots)]
            self._pivots = pivots
        pivot_set = set(self._pivots)
        self.free_columns = [c for c in range(ambient_dim) if c not in pivot_set]
        self.representatives: list[Vector] = []
        for c in self.free_columns:
            e = zero_vec(ambient_dim)
            e[c] = Fraction(1)
            self.representatives.append(e)

    @property
    def dim(self) -> int:
        return len(self.free_columns)

    def reduce(self, v: Sequence) -> Vector:
        """Coordinates of v modulo the subspace (over the representatives)."""
        v = vec(v)
        if len(v) != self.ambient_dim:
            raise ValueError("vector length mismatch")
        w = list(v)
        for i, pc in enumerate(self._pivots):
            f = w[pc]
            if f:
                for c, val in self._rref_rows[i].items():
                    w[c] -= f * val
        return [w[c] for c in self.free_columns]

    def contains(self, v: Sequence) -> bool:
        return is_zero_vec(self.reduce(v))


def quotient_basis(ambient_dim: int, subspace: Sequence[Vector]):
    """Functional view of QuotientSpace: (representatives, reduce)."""
    q = QuotientSpace(ambient_dim, subspace)
    return q.representatives, q.reduce
