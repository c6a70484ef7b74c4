"""
Exponential growth rate of the instability indices, Weyl law and semigroup thresholds.
"""

import cmath
import logging
import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional

from ..specfun.branch import BranchedSqrtState, branched_sqrt
from ..specfun.functions import gamma_real
from ..specfun.quadrature import QuadratureConfig
from ..utils.exceptions import DomainError
from .params import OscillatorParams
from .phase import (
    laplace_leading_constant,
    laplace_prefactor,
    phi,
    saddle_x,
)

logger = logging.getLogger(__name__)


def weyl_coefficient(k: int) -> float:
    """(k+1) sqrt(pi) Gamma((k+1)/2k) / Gamma(1/2k)."""
    return (k + 1) * math.sqrt(math.pi) * gamma_real((k + 1) / (2 * k)) / gamma_real(1 / (2 * k))


def weyl_exponent(k: int) -> float:
    return 2 * k / (k + 1)


def weyl_modulus(n: int, k: int) -> float:
    """
    Leading Weyl term for |lambda| with 0-based index n.

    The eigenpair with 1-based index m is compared against weyl_modulus(m - 1, k).
    """
    if n < 0:
        raise DomainError(f"Weyl index must be nonnegative, got {n}", details={"n": n})
    return (weyl_coefficient(k) * (n + 0.5)) ** weyl_exponent(k)


def h_of_modulus(lambda_abs: float, k: int) -> float:
    """Semiclassical parameter h = |lambda|^{-(k+1)/(2k)}."""
    if not lambda_abs > 0:
        raise DomainError(
            f"h_of_modulus requires a positive modulus, got {lambda_abs}",
            details={"lambda_abs": lambda_abs},
        )
    return lambda_abs ** (-(k + 1) / (2 * k))


def rate_c(params: OscillatorParams) -> float:
    """
    Growth rate c_k(theta) = 2 phi(x_s) times weyl_coefficient(k).

    Zero at theta = 0, the limit as theta -> 0.
    """
    if params.is_selfadjoint:
        return 0.0
    x_s = saddle_x(params)
    return 2.0 * phi(params, x_s) * weyl_coefficient(params.k)


def davies_kuijlaars_c1(theta: float) -> float:
    """
    Harmonic (k=1) growth rate 2 Re f(z), f(z) = log(z + sqrt(z^2-1)) - z sqrt(z^2-1).

    z = e^{i|theta|/4} / sqrt(2 cos(theta/2)), square root on C minus [0, +inf) with
    sqrt(-1) = i.

    Raises:
        DomainError: If |theta| >= pi
    """
    if not abs(theta) < math.pi:
        raise DomainError(
            f"davies_kuijlaars_c1 requires |theta| < pi, got {theta}", details={"theta": theta}
        )
    a = abs(theta)
    z = cmath.exp(0.25j * a) / math.sqrt(2.0 * math.cos(0.5 * a))
    root = branched_sqrt(z * z - 1.0, BranchedSqrtState())
    f = cmath.log(z + root) - z * root
    return 2.0 * f.real


def _check_threshold_angle(theta: float) -> None:
    if abs(theta) > math.pi / 2:
        raise DomainError(
            f"Semigroup thresholds require |theta| <= pi/2, got {theta}", details={"theta": theta}
        )


def semigroup_threshold(theta: float) -> float:
    """Threshold T(theta) = c_1(theta) / cos(theta/2) for the harmonic case."""
    _check_threshold_angle(theta)
    return rate_c(OscillatorParams(k=1, theta=theta)) / math.cos(0.5 * theta)


def rate_threshold(theta: float) -> float:
    """
    Time where the term exponent c_1 n - 2t cos(theta/2) n changes sign (k=1).

    Equals semigroup_threshold / 2.
    """
    _check_threshold_angle(theta)
    return rate_c(OscillatorParams(k=1, theta=theta)) / (2.0 * math.cos(0.5 * theta))


@dataclass(frozen=True)
class AsymptoticReport:
    """Closed-form asymptotic constants for one (k, theta)."""

    k: int
    theta: float
    x_saddle: Optional[float]
    phi_at_saddle: float
    d_k: float
    c_k: float
    laplace_prefactor: Optional[float]
    laplace_leading_constant: Optional[float]
    weyl_coefficient: float
    weyl_exponent: float
    eigenvalue_angle: float
    semigroup_threshold: Optional[float]
    rate_threshold: Optional[float]
    davies_kuijlaars_c1: Optional[float]

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def asymptotic_report(
    params: OscillatorParams, cfg: Optional[QuadratureConfig] = None
) -> AsymptoticReport:
    """
    Evaluate every closed-form constant for params.

    Saddle and Laplace constants are absent at theta = 0; thresholds are present only
    for k = 1 and |theta| <= pi/2.
    """
    coefficient = weyl_coefficient(params.k)

    if params.is_selfadjoint:
        x_s = None
        phi_s = 0.0
        prefactor = None
        leading = None
    else:
        x_s = saddle_x(params)
        phi_s = phi(params, x_s, cfg)
        prefactor = laplace_prefactor(params)
        leading = laplace_leading_constant(params)

    harmonic = params.k == 1
    thresholds_apply = harmonic and params.abs_theta <= math.pi / 2

    report = AsymptoticReport(
        k=params.k,
        theta=params.theta,
        x_saddle=x_s,
        phi_at_saddle=phi_s,
        d_k=2.0 * phi_s,
        c_k=2.0 * phi_s * coefficient,
        laplace_prefactor=prefactor,
        laplace_leading_constant=leading,
        weyl_coefficient=coefficient,
        weyl_exponent=weyl_exponent(params.k),
        eigenvalue_angle=params.eigenvalue_angle,
        semigroup_threshold=semigroup_threshold(params.theta) if thresholds_apply else None,
        rate_threshold=rate_threshold(params.theta) if thresholds_apply else None,
        davies_kuijlaars_c1=davies_kuijlaars_c1(params.theta) if harmonic else None,
    )
    logger.info(f"Asymptotic report k={params.k} theta={params.theta}: c_k={report.c_k:.12g}")
    return report
