"""Tangent maps of arc spaces at an arc and the injectivity/cokernel verdict.

A tangent vector to the arc space of ``X`` at ``gamma`` is a vector
``w`` in ``k[[t]]^m`` (one entry per ambient coordinate) killed by the
Jacobian of X's equations evaluated along ``gamma``. The tangent map of
``f`` sends ``w`` to ``J_f(gamma) w``. In saturated bases of source and
target tangent spaces this is an ``n x n`` matrix ``C`` over ``k[[t]]``
whose elementary divisors ``t^a_i`` control injectivity and the cokernel.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import AtLeast, Finite, TruncSeries, ValOrBound, poly_eval_series
from .arcs import (
    Arc,
    arc_pushforward,
    check_not_in_sing_arcs,
    check_smooth_along,
    ord_along,
)
from .errors import (
    InsufficientPrecision,
    PreconditionViolated,
    RankMismatch,
    SingularTargetArc,
    SmoothnessFailure,
    SolveFailure,
)
from .linalg import rank
from .matrix import Matrix, determinant
from .schemes import AffinePresentation, MorphismPresentation, jacobian, ramification_ideal
from .smith import SmithDecomposition, smith_normal_form


@dataclass(frozen=True)
class TangentSpacePresentation:
    carrier: AffinePresentation
    arc: Arc
    kernel_basis: Matrix
    free_rank: int
    precision: int


def evaluate_along(m: Matrix, arc: Arc) -> Matrix:
    return m.map(lambda p: poly_eval_series(p, arc.coords))


def _series_identity(n: int, fld, precision: int) -> Matrix:
    return Matrix.identity(n, TruncSeries.one(fld, precision), TruncSeries.zero(fld, precision))


def saturate(B: Matrix) -> Matrix:
    """A basis of the saturation of the column span of ``B`` in the free module."""
    cols = []
    for col in B.columns():
        v = min((c.val() for c in col if isinstance(c.val(), Finite)),
                key=lambda x: x.value, default=None)
        if v is None:
            raise RankMismatch("kernel basis column vanishes to precision")
        cols.append([c.div_t_power(v.value) for c in col])
    B = Matrix.from_columns(cols, B.nrows)
    snf = smith_normal_form(B)
    if snf.rank_profile < B.ncols:
        raise RankMismatch("kernel basis columns are dependent to precision")
    if all(d == Finite(0) for d in snf.divisors):
        return B
    return snf.U.select_columns(range(B.ncols))


def tangent_space_presentation(Y: AffinePresentation, delta: Arc) -> TangentSpacePresentation:
    """Saturated basis of the vectors killed by ``J_Y(delta)``."""
    n = delta.precision
    fld = Y.field
    m = Y.ambient_dim
    if Y.is_affine_space:
        return TangentSpacePresentation(Y, delta, _series_identity(m, fld, n), m, n)
    if not isinstance(check_not_in_sing_arcs(Y, delta), Finite):
        raise SingularTargetArc("arc lies in the singular locus to working precision")
    J = evaluate_along(jacobian(Y.equations, Y.variables), delta)
    snf = smith_normal_form(J)
    expected = m - Y.dim
    if snf.rank_profile != expected:
        raise RankMismatch(
            f"Jacobian along the arc has rank {snf.rank_profile}, expected {expected} "
            f"for a scheme of dimension {Y.dim} in A^{m}"
        )
    # quotients by t^v lose v digits: V_inv is only known modulo t^(N - v_max)
    usable = n - max(snf.finite_exponents, default=0)
    if usable < 1:
        raise InsufficientPrecision("no reliable digits left in the kernel basis")
    basis = snf.V_inv.select_columns(range(expected, m)).map(lambda s: s.with_precision(usable))
    basis = saturate(basis)
    check = J.map(lambda s: s.with_precision(usable)).matmul(basis, TruncSeries.zero(fld, usable))
    if any(not e.is_indistinguishable_from_zero() for row in check for e in row):
        raise SolveFailure("kernel basis is not annihilated by the Jacobian")
    return TangentSpacePresentation(Y, delta, basis, Y.dim, usable)


def solve_in_basis(B: Matrix, W: Matrix) -> Matrix:
    """The unique ``C`` with ``B C == W`` for ``B`` with saturated independent columns."""
    snf = smith_normal_form(B)
    n = B.ncols
    if snf.rank_profile < n:
        raise SolveFailure("basis columns are dependent to precision")
    zero = B[0, 0] * 0
    Z = snf.U_inv.matmul(W, zero)
    for i in range(n, B.nrows):
        if any(not z.is_indistinguishable_from_zero() for z in Z.rows[i]):
            raise SolveFailure("vectors do not lie in the span of the basis")
    top = []
    for i, d in enumerate(snf.divisors):
        try:
            top.append([z.div_t_power(d.value) for z in Z.rows[i]])
        except ValueError:
            raise SolveFailure("vectors do not lie in the span of the basis") from None
    return snf.V_inv.matmul(Matrix.from_rows(top, ncols=W.ncols), zero)


def tangent_map_matrix(f: MorphismPresentation, gamma: Arc,
                       tsp: TangentSpacePresentation) -> Matrix:
    """Matrix of the tangent map of f at gamma in saturated source/target bases."""
    source_tsp = tangent_space_presentation(f.source, gamma)
    n = min(source_tsp.precision, tsp.precision)
    fld = f.field
    Jf = evaluate_along(jacobian(f.components, f.source.variables), gamma)
    Jf = Jf.map(lambda s: s.with_precision(n))
    B_x = source_tsp.kernel_basis.map(lambda s: s.with_precision(n))
    B_y = tsp.kernel_basis.map(lambda s: s.with_precision(n))
    W = Jf.matmul(B_x, TruncSeries.zero(fld, n))
    return solve_in_basis(B_y, W)


def coker_dim_bruteforce(C: Matrix) -> int:
    """k-dimension of the cokernel of C acting on (k[t]/t^N)^n, by dense elimination."""
    if C.nrows != C.ncols:
        raise PreconditionViolated("square matrix required")
    n = C.nrows
    N = min(e.precision for row in C for e in row)
    fld = C[0, 0].field
    det = determinant(C.map(lambda s: s.with_precision(N)), TruncSeries.zero(fld, N))
    v = det.val()
    if not isinstance(v, Finite) or 2 * v.value >= N:
        raise PreconditionViolated(
            f"det valuation {v} not safely below precision {N}"
        )
    images = []
    for j in range(n):
        col = [C[i, j].coeffs[:N] for i in range(n)]
        for shift in range(N):
            vec = []
            for i in range(n):
                vec.extend([fld.zero] * shift + list(col[i][:N - shift]))
            images.append(vec)
    return n * N - rank(images, fld)


@dataclass(frozen=True)
class Verdict:
    status: str
    reason: str | None = None

    def __str__(self):
        return self.status if self.reason is None else f"{self.status}({self.reason})"


CONFIRMED = "Confirmed"
INCONCLUSIVE = "Inconclusive"
REFUTED = "Refuted"


@dataclass(frozen=True)
class Theorem2Report:
    e: ValOrBound
    divisors: tuple[ValOrBound, ...]
    injective: bool
    coker_dim: int | None
    sing_check: ValOrBound
    verdict: Verdict
    precision: int
    tangent_matrix: Matrix | None = field(default=None, compare=False, repr=False)

    @property
    def divisor_sum(self) -> int | None:
        if not self.injective:
            return None
        return sum(d.value for d in self.divisors)

    def summary(self) -> str:
        coker = "NA" if self.coker_dim is None else str(self.coker_dim)
        return (f"e={format_val(self.e)} divisors={format_divisors(self.divisors)} "
                f"coker={coker} sing_check={self.sing_check} verdict={self.verdict}")


def format_val(v: ValOrBound) -> str:
    return str(v.value) if isinstance(v, Finite) else str(v)


def format_divisors(divs: Sequence[ValOrBound]) -> str:
    return "[" + ",".join(format_val(d) for d in divs) + "]"


def theorem2_verdict(f: MorphismPresentation, gamma: Arc) -> Theorem2Report:
    """Certify that the tangent map at gamma is injective with cokernel of dimension e.

    Raises :class:`SmoothnessFailure` or :class:`SingularTargetArc` when a
    hypothesis visibly fails; returns an Inconclusive report when precision
    cannot certify one.
    """
    N = gamma.precision
    if not check_smooth_along(f.source, gamma):
        raise SmoothnessFailure("the arc is centered at a singular point of the source")
    delta = arc_pushforward(f, gamma)
    sing = check_not_in_sing_arcs(f.target, delta)
    if not isinstance(sing, Finite):
        raise SingularTargetArc(
            f"image arc lies in the singular locus of the target to precision ({sing})"
        )
    e = ord_along(ramification_ideal(f), gamma)

    def report(divisors=(), injective=False, coker=None, verdict=None, C=None):
        return Theorem2Report(e, tuple(divisors), injective, coker, sing, verdict, N, C)

    try:
        tsp = tangent_space_presentation(f.target, delta)
        C = tangent_map_matrix(f, gamma, tsp)
        snf = smith_normal_form(C)
    except InsufficientPrecision as exc:
        return report(verdict=Verdict(INCONCLUSIVE, str(exc)))

    divisors = snf.divisors
    injective = all(isinstance(d, Finite) for d in divisors)
    if not isinstance(e, Finite):
        return report(divisors, injective, None, Verdict(INCONCLUSIVE, f"e unreadable: {e}"), C)
    margin = C[0, 0].precision // 2 if C.nrows else N // 2
    if e.value > margin:
        return report(divisors, injective, None,
                      Verdict(INCONCLUSIVE, f"e={e.value} exceeds safety margin {margin}"), C)
    if not injective:
        return report(divisors, injective, None,
                      Verdict(REFUTED, "tangent map not injective although e is finite"), C)
    total = sum(d.value for d in divisors)
    if total > margin:
        return report(divisors, injective, None,
                      Verdict(INCONCLUSIVE, f"divisor sum {total} exceeds safety margin {margin}"), C)
    if C.nrows == 0:
        coker = 0
    else:
        try:
            coker = coker_dim_bruteforce(C)
        except PreconditionViolated as exc:
            return report(divisors, injective, None, Verdict(INCONCLUSIVE, str(exc)), C)
    if total == coker == e.value:
        return report(divisors, injective, coker, Verdict(CONFIRMED), C)
    return report(divisors, injective, coker,
                  Verdict(REFUTED, f"sum of divisors {total}, cokernel {coker}, e {e.value}"), C)


__all__ = [
    "SmithDecomposition", "TangentSpacePresentation", "Theorem2Report", "Verdict",
    "smith_normal_form", "tangent_space_presentation", "tangent_map_matrix",
    "coker_dim_bruteforce", "theorem2_verdict", "saturate", "solve_in_basis",
    "AtLeast",
]
