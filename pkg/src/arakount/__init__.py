"""Exact arithmetic toolkit for counting rational points on hypersurfaces."""

from .errors import (
    ArakountError,
    BudgetExceeded,
    ComputationError,
    ExprSyntaxError,
    HypothesisViolated,
    InvalidFieldData,
    InvalidParams,
    InvalidPoint,
    InvalidPolynomial,
    NonHomogeneous,
    NotOnVariety,
    SingularMinor,
    SymbolicOnly,
    UnknownVariable,
    Unsupported,
    UsageError,
)
from .heights import ProjectivePoint, arakelov_height, hypersurface_height_interval, naive_poly_height, weil_height
from .parser import parse_polynomial
from .polynomial import HomogeneousPolynomial
from .prime_distribution import NumberFieldData, number_field

__version__ = "0.1.0"

__all__ = [
    "ArakountError",
    "BudgetExceeded",
    "ComputationError",
    "ExprSyntaxError",
    "HypothesisViolated",
    "InvalidFieldData",
    "InvalidParams",
    "InvalidPoint",
    "InvalidPolynomial",
    "NonHomogeneous",
    "NotOnVariety",
    "SingularMinor",
    "SymbolicOnly",
    "UnknownVariable",
    "Unsupported",
    "UsageError",
    "ProjectivePoint",
    "arakelov_height",
    "hypersurface_height_interval",
    "naive_poly_height",
    "weil_height",
    "parse_polynomial",
    "HomogeneousPolynomial",
    "NumberFieldData",
    "number_field",
]
