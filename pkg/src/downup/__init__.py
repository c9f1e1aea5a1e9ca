"""Exact computations in down-up algebras A(alpha, beta, gamma)."""

from .errors import DownUpError, FieldError, ParseError, PreconditionError, ReductionLimitError
from .field import QuadScalar, Rational, field_ops, root_of_unity_order, scalar, sqrt_in_field
from .pbw import (
    Element,
    Params,
    commutator,
    eta,
    filtration_count,
    grade_decompose,
    is_central,
    multiply,
    reduce,
)
from .expr import format_element, parse_element, parse_scalar

__all__ = [
    "DownUpError",
    "Element",
    "FieldError",
    "Params",
    "ParseError",
    "PreconditionError",
    "QuadScalar",
    "Rational",
    "ReductionLimitError",
    "commutator",
    "eta",
    "field_ops",
    "filtration_count",
    "format_element",
    "grade_decompose",
    "is_central",
    "multiply",
    "parse_element",
    "parse_scalar",
    "reduce",
    "root_of_unity_order",
    "scalar",
    "sqrt_in_field",
]
