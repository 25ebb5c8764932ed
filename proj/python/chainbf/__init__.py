"""Bayes factors and singular BIC scores for 2x2 tables under hidden-chain embeddings."""

from ._core import (
    DomainError,
    FeasibilityError,
    __version__,
    bf0,
    bf_k,
    crossing_points,
    fisher_exact,
    jensen_bound,
    log_gamma,
    score_difference,
)

__all__ = [
    "DomainError",
    "FeasibilityError",
    "__version__",
    "bf0",
    "bf_k",
    "crossing_points",
    "fisher_exact",
    "jensen_bound",
    "log_gamma",
    "score_difference",
]
