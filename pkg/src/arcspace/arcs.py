"""Arcs on affine schemes as tuples of truncated power series."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import AtLeast, Finite, TruncSeries, ValOrBound, min_valuation, poly_eval_series
from .algebra.poly import MultiPoly
from .errors import EmptyIdeal, NotOnScheme
from .schemes import AffinePresentation, MorphismPresentation, singular_locus_ideal


@dataclass(frozen=True)
class Arc:
    scheme: AffinePresentation
    coords: tuple[TruncSeries, ...]

    @property
    def precision(self) -> int:
        return self.coords[0].precision if self.coords else 0

    @property
    def center(self) -> tuple:
        return tuple(c.constant_term() for c in self.coords)

    def with_precision(self, n: int) -> Arc:
        return Arc(self.scheme, tuple(c.with_precision(n) for c in self.coords))


def arc_validate(X: AffinePresentation, coords: Sequence, precision: int) -> Arc:
    """Build an arc from series (or coefficient lists) and check X's equations.

    Passing the check is necessary for a true arc; it cannot certify what
    happens at or beyond ``t^precision``.
    """
    if len(coords) != X.ambient_dim:
        raise ValueError(f"expected {X.ambient_dim} coordinates, got {len(coords)}")
    series = []
    for c in coords:
        if isinstance(c, TruncSeries):
            if c.field != X.field:
                raise ValueError(f"coordinate over {c.field}, scheme over {X.field}")
            series.append(c.with_precision(precision))
        else:
            series.append(TruncSeries(X.field, c, precision))
    for i, eq in enumerate(X.equations):
        v = poly_eval_series(eq, series).val()
        if isinstance(v, Finite):
            raise NotOnScheme(i, v.value)
    return Arc(X, tuple(series))


def arc_pushforward(f: MorphismPresentation, gamma: Arc) -> Arc:
    if gamma.scheme != f.source:
        raise ValueError("arc is not carried by the source of the morphism")
    coords = [poly_eval_series(c, gamma.coords) for c in f.components]
    return arc_validate(f.target, coords, gamma.precision)


def ord_along(generators: Sequence[MultiPoly], gamma: Arc) -> ValOrBound:
    """Order of vanishing along ``gamma`` of the ideal spanned by ``generators``."""
    if not generators:
        raise EmptyIdeal("pass [0] or [1] explicitly instead of an empty generator list")
    return min_valuation(poly_eval_series(g, gamma.coords).val() for g in generators)


def check_smooth_along(X: AffinePresentation, gamma: Arc) -> bool:
    """True iff the center of ``gamma`` is a smooth point of X."""
    return ord_along(singular_locus_ideal(X), gamma) == Finite(0)


def check_not_in_sing_arcs(Y: AffinePresentation, delta: Arc) -> ValOrBound:
    """Finite result certifies delta is not an arc of Y_sing; AtLeast is inconclusive."""
    return ord_along(singular_locus_ideal(Y), delta)


__all__ = [
    "Arc", "AtLeast", "Finite", "arc_validate", "arc_pushforward", "ord_along",
    "check_smooth_along", "check_not_in_sing_arcs",
]
