"""Pythagorean triangles whose sides are a digit power d^k and a base-b repdigit."""

from .bigmath import exact_sqrt, gcd, is_perfect_square, isqrt, power
from .errors import ConstraintError, UnsupportedDigitError
from .families import (
    Family,
    FamilyParams,
    basic_principle_check,
    corollary_base,
    enumerate_family,
    generate_family,
)
from .repdigit import RepdigitSpec, digit_power, parse_base, render_base, repdigit_value
from .search import (
    Rejection,
    SearchRange,
    SearchReport,
    TheoremReport,
    mod7_residue_table,
    prefilter,
    search,
    verify_theorem,
)
from .triples import (
    TriangleType,
    TriangleWitness,
    TripleParams,
    check_type1,
    check_type2,
    compose_triple,
    decompose_triple,
)

__all__ = [
    "ConstraintError", "UnsupportedDigitError",
    "isqrt", "exact_sqrt", "is_perfect_square", "gcd", "power",
    "RepdigitSpec", "repdigit_value", "digit_power", "render_base", "parse_base",
    "TripleParams", "TriangleType", "TriangleWitness",
    "compose_triple", "decompose_triple", "check_type1", "check_type2",
    "Family", "FamilyParams", "basic_principle_check", "generate_family",
    "enumerate_family", "corollary_base",
    "Rejection", "SearchRange", "SearchReport", "TheoremReport",
    "prefilter", "search", "verify_theorem", "mod7_residue_table",
]
