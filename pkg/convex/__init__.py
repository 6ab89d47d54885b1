"""
ACQPT Convex Module

Conic solves over the data-consistent CPTP set
"""

from .feasible_set import (
    SolverStatus,
    Sense,
    SolverError,
    InfeasibleSetError,
    FeasibleSetSpec,
    FeasibleSet,
    cptp_variable,
    clean_chi,
    solve_linear,
    solve_problem,
)

from .icc import IccResult, icc, size_objective

from .estimators import (
    EntropySearchResult,
    entropy_gradient,
    frank_wolfe_descent,
    min_entropy_search,
    min_entropy_estimator,
    min_l1_estimator,
    ml_fit,
    ml_probabilities,
    least_squares_estimator,
)

__all__ = [
    # Feasible set
    "SolverStatus",
    "Sense",
    "SolverError",
    "InfeasibleSetError",
    "FeasibleSetSpec",
    "FeasibleSet",
    "cptp_variable",
    "clean_chi",
    "solve_linear",
    "solve_problem",
    # ICC
    "IccResult",
    "icc",
    "size_objective",
    # Estimators
    "EntropySearchResult",
    "entropy_gradient",
    "frank_wolfe_descent",
    "min_entropy_search",
    "min_entropy_estimator",
    "min_l1_estimator",
    "ml_fit",
    "ml_probabilities",
    "least_squares_estimator",
]
