"""Small dense matrices over any commutative ring (polynomials or series).

Entries are arbitrary ring elements; the shape is stored explicitly so that
matrices with zero rows or columns (e.g. the Jacobian of no equations) are
still meaningful.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Callable, Sequence


@dataclass(frozen=True)
class Matrix:
    rows: tuple[tuple, ...]
    nrows: int
    ncols: int

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ncols: int | None = None) -> Matrix:
        rows = tuple(tuple(r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")
        return cls(rows, len(rows), ncols)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int) -> Matrix:
        cols = [tuple(c) for c in cols]
        return cls.from_rows([[c[i] for c in cols] for i in range(nrows)],
                             ncols=len(cols))

    @classmethod
    def identity(cls, n: int, one, zero) -> Matrix:
        return cls.from_rows([[one if i == j else zero for j in range(n)]
                              for i in range(n)], ncols=n)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> Matrix:
        return Matrix.from_rows([self.column(j) for j in range(self.ncols)],
                                ncols=self.nrows)

    def map(self, fn: Callable) -> Matrix:
        return Matrix.from_rows([[fn(x) for x in r] for r in self.rows], ncols=self.ncols)

    def hstack(self, other: Matrix) -> Matrix:
        if self.nrows != other.nrows:
            raise ValueError(f"cannot stack {self.shape} beside {other.shape}")
        return Matrix.from_rows([a + b for a, b in zip(self.rows, other.rows)],
                                ncols=self.ncols + other.ncols)

    def select_columns(self, cols: Sequence[int]) -> Matrix:
        return Matrix.from_rows([[r[j] for j in cols] for r in self.rows], ncols=len(cols))

    def select_rows(self, rows: Sequence[int]) -> Matrix:
        return Matrix.from_rows([self.rows[i] for i in rows], ncols=self.ncols)

    def matmul(self, other: Matrix, zero) -> Matrix:
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for r in self.rows:
            row = []
            for j in range(other.ncols):
                acc = zero
                for k, x in enumerate(r):
                    acc = acc + x * other.rows[k][j]
                row.append(acc)
            out.append(row)
        return Matrix.from_rows(out, ncols=other.ncols)

    def __iter__(self):
        return iter(self.rows)


def minor_function(m: Matrix, zero):
    """Return ``det(rows, cols)`` computing minors by memoized Laplace expansion."""

    @lru_cache(maxsize=None)
    def det(rows: tuple[int, ...], cols: tuple[int, ...]):
        if not rows:
            return zero + 1
        if len(rows) == 1:
            return m.rows[rows[0]][cols[0]]
        first, rest = rows[0], rows[1:]
        total = zero
        for k, c in enumerate(cols):
            entry = m.rows[first][c]
            if _is_zero(entry):
                continue
            sub = det(rest, cols[:k] + cols[k + 1:])
            term = entry * sub
            total = total - term if k % 2 else total + term
        return total

    return det


def minors(m: Matrix, size: int, zero) -> list:
    """All ``size x size`` minors, row subsets outermost, both in lexicographic order."""
    det = minor_function(m, zero)
    return [det(rs, cs)
            for rs in combinations(range(m.nrows), size)
            for cs in combinations(range(m.ncols), size)]


def determinant(m: Matrix, zero):
    if m.nrows != m.ncols:
        raise ValueError(f"determinant of non-square {m.shape} matrix")
    det = minor_function(m, zero)
    return det(tuple(range(m.nrows)), tuple(range(m.ncols)))


def _is_zero(x) -> bool:
    if hasattr(x, "is_zero"):
        return x.is_zero()
    if hasattr(x, "is_indistinguishable_from_zero"):
        return x.is_indistinguishable_from_zero()
    return not x
