"""McKay bivariate gamma distribution: sampling, closed-form and ML estimation, inference."""

from ._core import (
    DegenerateStatisticsError,
    DifferentiationError,
    DomainError,
    EstimateResult,
    InsufficientReplicatesError,
    IoError,
    NoValidEstimateError,
    NumericRangeError,
    Params,
    ParseError,
    bootstrap_se,
    default_profile_grid,
    density_grid,
    digamma,
    fit,
    gof,
    log_gamma,
    log_likelihood,
    log_pdf,
    monte_carlo,
    profile_select,
    rainfall_pairs,
    reg_gamma_p,
    rosenblatt,
    sample,
    trigamma,
    zhao_asymptotic_se,
)

METHODS = ("ml", "zhao", "nawa", "proposed1", "proposed2")

__all__ = [
    "METHODS",
    "DegenerateStatisticsError",
    "DifferentiationError",
    "DomainError",
    "EstimateResult",
    "InsufficientReplicatesError",
    "IoError",
    "NoValidEstimateError",
    "NumericRangeError",
    "Params",
    "ParseError",
    "bootstrap_se",
    "default_profile_grid",
    "density_grid",
    "digamma",
    "fit",
    "gof",
    "log_gamma",
    "log_likelihood",
    "log_pdf",
    "monte_carlo",
    "profile_select",
    "rainfall_pairs",
    "reg_gamma_p",
    "rosenblatt",
    "sample",
    "trigamma",
    "zhao_asymptotic_se",
]
