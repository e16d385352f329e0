"""Fundamental solutions and connection matrices for the generalized
hypergeometric equation at its three singular points.

The package evaluates the solution bases at 0, 1 and infinity, builds the
explicit sine-quotient connection matrices between them, and verifies the
underlying identities numerically at configurable precision.
"""

from .exceptions import (ConfigError, DegenerateMatrixError, GenericityError,
                         GHConnectError, PoleError, QuadratureError, Refusal,
                         SeriesError)
from .params import (ExponentSet, GenericityReport, Parameters, Violation,
                     partial_sum, shift, to_exponents, validate)
from .series import (SeriesValue, SolutionVector, eval_ghs, f0, f1_holo,
                     f1_nonholo, finf, solution_vector)
from .connection import (ConnectionMatrix, c_01, c_10, c_hat, c_inf0,
                         c_one_inf, periodicity_residual, scaling_matrices)
from .oracle import (BranchFixing, DomainSpec, QuadResult, ResidueCheck,
                     gauss_reference, integrate_loaded_domain,
                     residue_sum_check)
from .verify import (VerificationReport, check_connection_01,
                     check_connection_inf0, check_corollary, check_inverse,
                     check_periodicity, run_suite)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "GHConnectError", "ConfigError", "GenericityError", "Refusal",
    "SeriesError", "QuadratureError", "PoleError", "DegenerateMatrixError",
    # parameters
    "Parameters", "ExponentSet", "GenericityReport", "Violation",
    "validate", "to_exponents", "partial_sum", "shift",
    # series
    "SeriesValue", "SolutionVector", "eval_ghs", "f0", "finf",
    "f1_holo", "f1_nonholo", "solution_vector",
    # connection matrices
    "ConnectionMatrix", "c_10", "c_01", "c_inf0", "c_one_inf", "c_hat",
    "scaling_matrices", "periodicity_residual",
    # oracles
    "DomainSpec", "BranchFixing", "QuadResult", "integrate_loaded_domain",
    "ResidueCheck", "residue_sum_check", "gauss_reference",
    # verification
    "VerificationReport", "check_connection_01", "check_connection_inf0",
    "check_corollary", "check_inverse", "check_periodicity", "run_suite",
]
