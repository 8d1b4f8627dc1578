"""Ramification of morphisms and tangent maps on arc spaces, computed exactly."""
from .algebra import GF, QQ, AtLeast, Finite, MultiPoly, TruncSeries, parse_field, parse_poly
from .arcs import (
    Arc,
    arc_pushforward,
    arc_validate,
    check_not_in_sing_arcs,
    check_smooth_along,
    ord_along,
)
from .schemes import (
    AffinePresentation,
    MorphismPresentation,
    compose,
    fitting_ideal,
    jacobian,
    ramification_ideal,
    relative_differentials_presentation,
    singular_locus_ideal,
)
from .smith import SmithDecomposition, smith_normal_form
from .tangent import (
    Theorem2Report,
    coker_dim_bruteforce,
    tangent_map_matrix,
    tangent_space_presentation,
    theorem2_verdict,
)

__all__ = [
    "GF", "QQ", "AtLeast", "Finite", "MultiPoly", "TruncSeries", "parse_field", "parse_poly",
    "Arc", "arc_pushforward", "arc_validate", "check_not_in_sing_arcs", "check_smooth_along",
    "ord_along", "AffinePresentation", "MorphismPresentation", "compose", "fitting_ideal",
    "jacobian", "ramification_ideal", "relative_differentials_presentation",
    "singular_locus_ideal", "SmithDecomposition", "smith_normal_form", "Theorem2Report",
    "coker_dim_bruteforce", "tangent_map_matrix", "tangent_space_presentation",
    "theorem2_verdict",
]

__version__ = "0.1.0"
