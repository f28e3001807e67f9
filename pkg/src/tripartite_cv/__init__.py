"""Tripartite continuous-variable entanglement: models, criteria and an oracle."""
from .criteria import (
    Criterion,
    CriterionResult,
    GainVector,
    StateClass,
    classify,
    duan_simon,
    reid_epr,
    steering3_one_from_two,
    steering3_two_from_one,
    vlf_optimal_gains,
    vlf_pairwise,
    vlf_single,
)
from .gaussian import CovarianceMatrix, X, Y, covariance_of, symplectic_eigenvalues, variance_of
from .models import (
    AokiParams,
    AsymmetricParams,
    OpaParams,
    UnsupportedRegimeError,
    aoki_closed_forms,
    aoki_covariance,
    asymmetric_covariance,
    covariance,
    opa_covariance,
)

__version__ = "0.1.0"

__all__ = [
    "AokiParams", "AsymmetricParams", "CovarianceMatrix", "Criterion", "CriterionResult",
    "GainVector", "OpaParams", "StateClass", "UnsupportedRegimeError", "X", "Y",
    "aoki_closed_forms", "aoki_covariance", "asymmetric_covariance", "classify", "covariance",
    "covariance_of", "duan_simon", "opa_covariance", "reid_epr", "steering3_one_from_two",
    "steering3_two_from_one", "symplectic_eigenvalues", "variance_of", "vlf_optimal_gains",
    "vlf_pairwise", "vlf_single",
]
