"""Arithmetic substrate: exact fields, sparse polynomials, truncated series."""
from .fields import GF, QQ, FpElement, PrimeField, RationalField, parse_field
from .poly import MultiPoly, PolyParseError, parse_poly
from .series import (
    DEFAULT_PRECISION,
    AtLeast,
    Finite,
    TruncSeries,
    ValOrBound,
    min_valuation,
    poly_eval_series,
    poly_partial,
    series_invert,
    series_mul,
    series_val,
)

__all__ = [
    "GF", "QQ", "FpElement", "PrimeField", "RationalField", "parse_field", "MultiPoly",
    "PolyParseError", "parse_poly", "DEFAULT_PRECISION", "AtLeast", "Finite", "TruncSeries",
    "ValOrBound", "min_valuation", "poly_eval_series", "poly_partial", "series_invert",
    "series_mul", "series_val",
]
