"""Derivative test for circle pairs and the closed-form coefficient checks."""

from .appendix import (
    IDENTITIES,
    NUMERATORS,
    SUPPLEMENTARY,
    Identity,
    IdentityOutcome,
    TierResult,
    check_identities,
    positive_controls,
    random_generic_check,
    random_perpendicular_check,
    rewrite_check,
    verify_appendix_b,
)
from .pipeline import *  # noqa: F401,F403
from .pipeline import __all__ as _pipeline_all

__all__ = [
    "IDENTITIES",
    "NUMERATORS",
    "SUPPLEMENTARY",
    "Identity",
    "IdentityOutcome",
    "TierResult",
    "check_identities",
    "positive_controls",
    "random_generic_check",
    "random_perpendicular_check",
    "rewrite_check",
    "verify_appendix_b",
    *_pipeline_all,
]
