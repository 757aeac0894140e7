"""Number fields: construction, element arithmetic, enumeration, automorphisms."""
from .build import build_field
from .field import FieldElement, NumberField, char_poly, is_totally_neg, is_totally_nonneg, is_totally_positive, norm, trace
from .spec import (
    ExplicitOrder,
    FieldSpec,
    Multiquadratic,
    Quadratic,
    Rationals,
    RealQuadratic,
    RelativeQuadratic,
    TotallyRealPoly,
    parse_field,
)

__all__ = [
    "ExplicitOrder",
    "FieldElement",
    "FieldSpec",
    "Multiquadratic",
    "NumberField",
    "Quadratic",
    "Rationals",
    "RealQuadratic",
    "RelativeQuadratic",
    "TotallyRealPoly",
    "build_field",
    "char_poly",
    "is_totally_neg",
    "is_totally_nonneg",
    "is_totally_positive",
    "norm",
    "parse_field",
    "trace",
]
