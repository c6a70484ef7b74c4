"""
Special functions and quadrature primitives.
"""

from .branch import BranchedSqrtState, branched_sqrt, branched_sqrt_path
from .functions import airy_ai, airy_ai_with_derivative, gamma_real
from .quadrature import QuadratureConfig, integrate_line

__all__ = [
    "BranchedSqrtState",
    "QuadratureConfig",
    "airy_ai",
    "airy_ai_with_derivative",
    "branched_sqrt",
    "branched_sqrt_path",
    "gamma_real",
    "integrate_line",
]
