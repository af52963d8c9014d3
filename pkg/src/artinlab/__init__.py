"""Spherical Artin-Tits groups: Garside normal forms, divisibility lattices,
order automorphisms and skew-brace structures with diagram-symmetry lambda maps."""

from .coxeter import (
    CoxeterMatrix,
    CoxeterType,
    DiagramSymmetry,
    classify_spherical,
    coxeter_group,
    diagram_symmetries,
    named_matrix,
    parse_coxeter,
)
from .exact import ExactReal, FieldContext, field_context, minpoly_two_cos
from .garside import ArtinGroup, GroupElement, MonoidElement, artin_group

__version__ = "0.1.0"

__all__ = [
    "ArtinGroup",
    "CoxeterMatrix",
    "CoxeterType",
    "DiagramSymmetry",
    "ExactReal",
    "FieldContext",
    "GroupElement",
    "MonoidElement",
    "artin_group",
    "classify_spherical",
    "coxeter_group",
    "diagram_symmetries",
    "field_context",
    "minpoly_two_cos",
    "named_matrix",
    "parse_coxeter",
]
