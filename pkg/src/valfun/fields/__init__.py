"""Coefficient fields, rational function fields and valued fields."""
from .coeffs import QQ, ExtField, GFp, GFq, PrimeField, RationalField, coefficient_field_from_json, is_prime
from .mpoly import FracField, MPoly, RatFunc
from .upoly import PoleError, RationalFn, UPoly
from .valued import (
    MonomialField,
    NotAUnit,
    PAdicField,
    UnsupportedResidueField,
    ValuedField,
    ValueNotInImage,
    field_from_json,
    random_residue,
    residue_roots,
    split_in_extension,
)

__all__ = [
    "QQ", "ExtField", "GFp", "GFq", "PrimeField", "RationalField", "coefficient_field_from_json", "is_prime",
    "FracField", "MPoly", "RatFunc", "PoleError", "RationalFn", "UPoly",
    "MonomialField", "NotAUnit", "PAdicField", "UnsupportedResidueField", "ValuedField", "ValueNotInImage",
    "field_from_json", "random_residue", "residue_roots", "split_in_extension",
]
