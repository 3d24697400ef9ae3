"""Exact polynomial and rational-function engine for the derivative test."""

from .pit import identity_test_random, sample_point
from .poly import (
    INDEX,
    VARIABLES,
    MissingVariableError,
    MultiPoly,
    NonDifferentiableVariable,
    variables,
)
from .ratfunc import BASIC_FACTORS, DivisionByZeroPoly, RatFunc, cancel_structured
from .trig import FULL, TrigContext, is_reduced, norm_sq_poly, reduce

__all__ = [
    "BASIC_FACTORS",
    "DivisionByZeroPoly",
    "FULL",
    "INDEX",
    "MissingVariableError",
    "MultiPoly",
    "NonDifferentiableVariable",
    "RatFunc",
    "TrigContext",
    "VARIABLES",
    "cancel_structured",
    "identity_test_random",
    "is_reduced",
    "norm_sq_poly",
    "reduce",
    "sample_point",
    "variables",
]
