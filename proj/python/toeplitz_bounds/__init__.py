"""Certified bounds for norms of Toeplitz operators on H-infinity whose
symbols are finite Blaschke products."""

from ._core import (
    BlaschkeProduct,
    InvalidInput,
    NumericalBreakdown,
    ToeplitzBoundsError,
    ToleranceNotMet,
    apply_toeplitz,
    certify_lower_bound,
    construct_interpolant,
    direct_norm_estimate,
    ideal_limit,
    lambda_functional,
    lemma1_upper_bound,
    minimal_level,
    omega_study,
    run_cli,
)

__all__ = [
    "BlaschkeProduct",
    "InvalidInput",
    "NumericalBreakdown",
    "ToeplitzBoundsError",
    "ToleranceNotMet",
    "apply_toeplitz",
    "certify_lower_bound",
    "construct_interpolant",
    "direct_norm_estimate",
    "ideal_limit",
    "lambda_functional",
    "lemma1_upper_bound",
    "minimal_level",
    "omega_study",
    "run_cli",
]
