"""
Hermite-Galerkin discretization, eigenpairs, instability indices and eigenfunctions.
"""

from .eigenfunctions import (
    SampledEigenfunction,
    evaluate_eigenfunction,
    hermite_functions,
    resolvable_radius,
    wkb_leading_error,
)
from .galerkin import (
    DiscretizationConfig,
    bandwidth,
    build_matrix,
    default_scale,
    derivative_matrix,
    position_matrix,
)
from .solver import (
    Eigenpair,
    KappaRow,
    RateFit,
    SpectrumResult,
    fit_instability_rate,
    kappa_from_coeffs,
    kappa_rows,
    kappa_spectrum,
    solve_spectrum,
)

__all__ = [
    "DiscretizationConfig",
    "Eigenpair",
    "KappaRow",
    "RateFit",
    "SampledEigenfunction",
    "SpectrumResult",
    "bandwidth",
    "build_matrix",
    "default_scale",
    "derivative_matrix",
    "evaluate_eigenfunction",
    "fit_instability_rate",
    "hermite_functions",
    "kappa_from_coeffs",
    "kappa_rows",
    "kappa_spectrum",
    "position_matrix",
    "resolvable_radius",
    "solve_spectrum",
    "wkb_leading_error",
]
