"""Smith normal form of matrices over ``k[[t]]`` known modulo ``t^N``.

All work happens in ``k[t]/(t^N)``. Elementary operations there are exact,
so the factorization ``M = U * diag(t^a) * V`` holds exactly modulo
``t^N``. Entries that vanish to precision become ``AtLeast(N)`` markers on
the diagonal instead of being guessed.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import AtLeast, Finite, TruncSeries, ValOrBound
from .errors import InsufficientPrecision
from .matrix import Matrix


@dataclass(frozen=True)
class SmithDecomposition:
    """``M == U * D * V`` modulo ``t^N``, with ``U_inv``/``V_inv`` the inverses.

    ``divisors`` has ``min(rows, cols)`` entries: Finite exponents in
    nondecreasing order followed by AtLeast(N) markers.
    """

    U: Matrix
    V: Matrix
    U_inv: Matrix
    V_inv: Matrix
    divisors: tuple[ValOrBound, ...]
    shape: tuple[int, int]
    precision: int

    @property
    def rank_profile(self) -> int:
        return sum(isinstance(d, Finite) for d in self.divisors)

    @property
    def finite_exponents(self) -> list[int]:
        return [d.value for d in self.divisors if isinstance(d, Finite)]

    def diagonal(self, field) -> Matrix:
        r, c = self.shape
        n = self.precision
        zero = TruncSeries.zero(field, n)
        rows = [[zero] * c for _ in range(r)]
        for i, d in enumerate(self.divisors):
            if isinstance(d, Finite):
                rows[i][i] = TruncSeries.monomial(field, d.value, n)
        return Matrix.from_rows(rows, ncols=c)


def smith_normal_form(M: Matrix, expected_rank: int | None = None) -> SmithDecomposition:
    """Diagonalize ``M`` by unimodular row and column operations.

    Pivots are chosen deterministically: least Finite valuation, then lowest
    row, then lowest column. ``expected_rank`` lets a caller demand that many
    Finite divisors; falling short raises :class:`InsufficientPrecision`.
    """
    r, c = M.shape
    entries = [e for row in M.rows for e in row]
    if not entries:
        raise ValueError("smith_normal_form needs a nonempty matrix")
    field = entries[0].field
    n = min(e.precision for e in entries)
    zero = TruncSeries.zero(field, n)
    one = TruncSeries.one(field, n)

    A = [[e.with_precision(n) for e in row] for row in M.rows]
    U = _identity(r, one, zero)
    U_inv = _identity(r, one, zero)
    V = _identity(c, one, zero)
    V_inv = _identity(c, one, zero)
    divisors: list[ValOrBound] = []

    for k in range(min(r, c)):
        pivot = _choose_pivot(A, k, r, c)
        if pivot is None:
            divisors.extend(AtLeast(n) for _ in range(min(r, c) - k))
            break
        v, pi, pj = pivot
        if pi != k:
            A[k], A[pi] = A[pi], A[k]
            U_inv[k], U_inv[pi] = U_inv[pi], U_inv[k]
            _swap_cols(U, k, pi)
        if pj != k:
            _swap_cols(A, k, pj)
            _swap_cols(V_inv, k, pj)
            V[k], V[pj] = V[pj], V[k]

        # normalize the pivot to exactly t^v
        unit = A[k][k].div_t_power(v)
        scale = unit.inverse()
        A[k] = [x * scale for x in A[k]]
        U_inv[k] = [x * scale for x in U_inv[k]]
        for i in range(r):
            U[i][k] = U[i][k] * unit
        A[k][k] = TruncSeries.monomial(field, v, n)

        for i in range(k + 1, r):
            entry = A[i][k]
            if entry.is_indistinguishable_from_zero():
                continue
            q = entry.div_t_power(v)
            # R_i <- R_i - q R_k ; inverse acts on U as C_k <- C_k + q C_i
            A[i] = [a - q * b for a, b in zip(A[i], A[k])]
            U_inv[i] = [a - q * b for a, b in zip(U_inv[i], U_inv[k])]
            for row in U:
                row[k] = row[k] + q * row[i]
            A[i][k] = zero
        for j in range(k + 1, c):
            entry = A[k][j]
            if entry.is_indistinguishable_from_zero():
                continue
            q = entry.div_t_power(v)
            # C_j <- C_j - q C_k ; inverse acts on V as R_k <- R_k + q R_j
            for row in A:
                row[j] = row[j] - q * row[k]
            for row in V_inv:
                row[j] = row[j] - q * row[k]
            V[k] = [a + q * b for a, b in zip(V[k], V[j])]
            A[k][j] = zero
        divisors.append(Finite(v))

    result = SmithDecomposition(
        U=Matrix.from_rows(U, ncols=r),
        V=Matrix.from_rows(V, ncols=c),
        U_inv=Matrix.from_rows(U_inv, ncols=r),
        V_inv=Matrix.from_rows(V_inv, ncols=c),
        divisors=tuple(divisors),
        shape=(r, c),
        precision=n,
    )
    if expected_rank is not None and result.rank_profile < expected_rank:
        raise InsufficientPrecision(
            f"only {result.rank_profile} of {expected_rank} expected elementary "
            f"divisors are readable at precision {n}"
        )
    return result


def _choose_pivot(A, k, r, c):
    best = None
    for i in range(k, r):
        for j in range(k, c):
            v = A[i][j].val()
            if isinstance(v, Finite) and (best is None or v.value < best[0]):
                best = (v.value, i, j)
    return best


def _identity(n, one, zero):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def _swap_cols(rows, a, b):
    for row in rows:
        row[a], row[b] = row[b], row[a]
