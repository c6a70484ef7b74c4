"""
Phase function of the rotated eigenfunctions and its Laplace-method constants.

The phase is the imaginary part of the integral of (1 - t^{2k})^{1/2} along the ray
of argument |theta|/(2(k+1)); its unique positive critical point (the saddle) controls
the exponential growth of the instability indices.
"""

import logging
import math
from typing import Optional

import numpy as np

from ..specfun.branch import BranchedSqrtState, branched_sqrt_path
from ..specfun.quadrature import QuadratureConfig, integrate_line
from ..utils.exceptions import (
    AccuracyError,
    BranchCutError,
    BranchProximityError,
    DegenerateAngleError,
    DomainError,
    NumericalDegeneracyError,
)
from .params import OscillatorParams

logger = logging.getLogger(__name__)

DEFAULT_QUADRATURE = QuadratureConfig()
BRANCH_PROXIMITY = 1e-8
SADDLE_STATIONARITY_TOL = 1e-10
SECOND_DERIVATIVE_STEP = 1e-5
SECOND_DERIVATIVE_CHECK_STEP = 1e-4
SECOND_DERIVATIVE_RTOL = 1e-4
BRANCH_SAMPLES = 257
# Truncate the Laplace integral once the integrand is below e^{-TAIL_EXPONENT} of its peak
TAIL_EXPONENT = 40.0


def branch_points(k: int) -> np.ndarray:
    """Roots of t^{2k} = 1, the branch points of (1 - t^{2k})^{1/2}."""
    return np.exp(1j * np.pi * np.arange(2 * k) / k)


def _segment_distance(point: complex, end: complex) -> float:
    """Distance from point to the segment [0, end]."""
    s = (point * np.conj(end)).real / abs(end) ** 2
    s = min(max(s, 0.0), 1.0)
    return abs(point - s * end)


def _check_branch_proximity(k: int, end: complex) -> None:
    distances = [_segment_distance(p, end) for p in branch_points(k)]
    nearest = min(distances)
    if nearest < BRANCH_PROXIMITY:
        raise BranchProximityError(
            f"Integration path [0, {end:.6g}] passes within {nearest:.2e} of a branch point",
            details={"k": k, "end": str(end), "distance": nearest},
        )


def _check_branch_continuity(k: int, end: complex) -> None:
    """Principal sqrt must coincide with the root tracked by continuity from 1 at t=0."""
    ts = end * np.linspace(0.0, 1.0, BRANCH_SAMPLES)
    radicands = 1.0 - ts ** (2 * k)
    state = BranchedSqrtState(previous_value=1.0 + 0j, initialized=True)
    tracked = np.asarray(branched_sqrt_path(radicands, state))
    if not np.allclose(tracked, np.sqrt(radicands), rtol=1e-12, atol=1e-12):
        raise BranchCutError(
            f"Principal square root leaves the tracked branch on [0, {end:.6g}]",
            details={"k": k, "end": str(end)},
        )


def _phi_integral(k: int, end: complex, cfg: QuadratureConfig) -> float:
    degree = 2 * k
    value = integrate_line(lambda t: np.sqrt(1.0 - t**degree), 0.0, end, cfg)
    return float(value.imag)


def phi(params: OscillatorParams, x: float, cfg: Optional[QuadratureConfig] = None) -> float:
    """
    Phase function Im of the integral of (1 - t^{2k})^{1/2} from 0 to x e^{i|theta|/(2(k+1))}.

    On the real ray (theta = 0) past the turning point the value is the limit theta -> 0+,
    -wkb_action(k, x), which is the sign phi_prime carries there.

    Args:
        params: Oscillator parameters
        x: Nonnegative real ray coordinate
        cfg: Quadrature configuration

    Returns:
        The phase value

    Raises:
        DomainError: If x is negative or not finite
        BranchProximityError: If the ray segment passes too close to a branch point
    """
    x = float(x)
    if not math.isfinite(x) or x < 0.0:
        raise DomainError(f"phi requires a finite x >= 0, got {x}", details={"x": x})
    if x == 0.0:
        return 0.0
    if params.is_selfadjoint and x - 1.0 >= BRANCH_PROXIMITY:
        return -wkb_action(params.k, x, cfg)

    end = x * np.exp(1j * params.ray_angle)
    _check_branch_proximity(params.k, end)
    _check_branch_continuity(params.k, end)
    return _phi_integral(params.k, end, cfg or DEFAULT_QUADRATURE)


def _ray_radicand(params: OscillatorParams, x: float) -> complex:
    """x^{2k} e^{ik|theta|/(k+1)} - 1."""
    beta = params.k * params.abs_theta / (params.k + 1)
    return complex(x ** (2 * params.k) * np.exp(1j * beta) - 1.0)


def phi_prime(params: OscillatorParams, x: float) -> float:
    """
    Closed-form derivative of phi.

    Uses -|w|^{1/2} cos(arg(w)/2 + |theta|/(2(k+1))) with w = x^{2k}e^{ik|theta|/(k+1)} - 1
    and arg(w) taken in [0, 2 pi).
    """
    w = _ray_radicand(params, float(x))
    if abs(w) < np.finfo(float).tiny:
        raise NumericalDegeneracyError(
            f"phi_prime is evaluated at a branch point (x={x})",
            details={"k": params.k, "theta": params.theta, "x": x},
        )
    arg = float(np.angle(w)) % (2.0 * np.pi)
    return -math.sqrt(abs(w)) * math.cos(0.5 * arg + params.ray_angle)


def saddle_x(params: OscillatorParams) -> float:
    """
    Unique positive critical point of phi.

    Closed form (sin(|theta|/(k+1)) / sin|theta|)^{1/(2k)}, checked against phi_prime.

    Raises:
        DegenerateAngleError: At theta = 0
        AccuracyError: If the stationarity self-check fails
    """
    if params.is_selfadjoint:
        raise DegenerateAngleError(
            "The saddle point is undefined at theta = 0", details={"k": params.k}
        )
    a = params.abs_theta
    x_s = (math.sin(a / (params.k + 1)) / math.sin(a)) ** (1.0 / (2 * params.k))

    residual = abs(phi_prime(params, x_s))
    if residual > SADDLE_STATIONARITY_TOL:
        raise AccuracyError(
            f"phi_prime at the saddle is {residual:.3e}, above {SADDLE_STATIONARITY_TOL}",
            details={"k": params.k, "theta": params.theta, "x_saddle": x_s},
        )
    return x_s


def phi_second_derivative(params: OscillatorParams, x: float, step: float) -> float:
    """Central difference of phi_prime at x."""
    return (phi_prime(params, x + step) - phi_prime(params, x - step)) / (2.0 * step)


def _saddle_curvature(params: OscillatorParams, x_s: float) -> float:
    fine = phi_second_derivative(params, x_s, SECOND_DERIVATIVE_STEP)
    coarse = phi_second_derivative(params, x_s, SECOND_DERIVATIVE_CHECK_STEP)
    if not (math.isfinite(fine) and math.isfinite(coarse)) or fine == 0.0:
        raise NumericalDegeneracyError(
            f"Non-finite or vanishing phi'' estimate at the saddle ({fine}, {coarse})",
            details={"k": params.k, "theta": params.theta},
        )
    if abs(fine - coarse) > SECOND_DERIVATIVE_RTOL * abs(fine):
        raise NumericalDegeneracyError(
            f"phi'' estimate unstable under step change: {fine} vs {coarse}",
            details={"k": params.k, "theta": params.theta},
        )
    return fine


def laplace_prefactor(params: OscillatorParams) -> float:
    """
    Constant C_k(theta) = 2 sqrt(2 pi) / |(x_s^{2k} e^{ik theta/(k+1)} - 1) phi''(x_s)|^{1/2}.

    Raises:
        DegenerateAngleError: At theta = 0
        NumericalDegeneracyError: If phi'' cannot be estimated reliably
    """
    x_s = saddle_x(params)
    curvature = _saddle_curvature(params, x_s)
    w = _ray_radicand(params, x_s)
    return 2.0 * math.sqrt(2.0 * math.pi) / math.sqrt(abs(w * curvature))


def laplace_leading_constant(params: OscillatorParams) -> float:
    """
    Laplace-method limit of laplace_integral as h -> 0.

    sqrt(pi) / |(x_s^{2k} e^{ik theta/(k+1)} - 1) phi''(x_s)|^{1/2}, which is
    laplace_prefactor / (2 sqrt 2).
    """
    x_s = saddle_x(params)
    curvature = _saddle_curvature(params, x_s)
    w = _ray_radicand(params, x_s)
    return math.sqrt(math.pi) / math.sqrt(abs(w * curvature))


def laplace_integral(
    params: OscillatorParams, h: float, cfg: Optional[QuadratureConfig] = None
) -> float:
    """
    Scaled half-line integral of |x^{2k}e^{ik theta/(k+1)} - 1|^{-1/2} e^{2 phi(x)/h}.

    The result is divided by h^{1/2} e^{2 phi(x_s)/h} so it stays finite for small h.

    Args:
        params: Oscillator parameters (theta != 0)
        h: Semiclassical parameter, positive
        cfg: Quadrature configuration for the inner phase integrals

    Returns:
        The scaled integral
    """
    if not h > 0:
        raise DomainError(f"h must be positive, got {h}", details={"h": h})
    cfg = cfg or DEFAULT_QUADRATURE
    x_s = saddle_x(params)
    direction = np.exp(1j * params.ray_angle)
    phi_s = phi(params, x_s, cfg)

    # extend the range until the integrand has decayed below e^{-TAIL_EXPONENT}
    x_max = 2.0 * x_s
    while phi(params, x_max, cfg) - phi_s > -0.5 * TAIL_EXPONENT * h:
        x_max *= 1.5
    _check_branch_proximity(params.k, x_max * direction)
    _check_branch_continuity(params.k, x_max * direction)

    def integrand(t: np.ndarray) -> np.ndarray:
        xs = t.real
        phases = np.array([_phi_integral(params.k, x * direction, cfg) for x in xs.ravel()])
        rotation = np.exp(2j * params.k * params.ray_angle)
        amplitude = np.abs(xs.ravel() ** (2 * params.k) * rotation - 1.0)
        values = amplitude**-0.5 * np.exp(2.0 * (phases - phi_s) / h)
        return values.reshape(xs.shape)

    outer = QuadratureConfig(abs_tol=1e-12, rel_tol=1e-9, max_subdivisions=cfg.max_subdivisions)
    total = integrate_line(integrand, 0.0, x_s, outer)
    total += integrate_line(integrand, x_s, x_max, outer)
    logger.debug(f"laplace_integral k={params.k} theta={params.theta} h={h}: [0, {x_max:.4g}]")
    return float(total.real) / math.sqrt(h)


def wkb_action(k: int, x: float, cfg: Optional[QuadratureConfig] = None) -> float:
    """
    Action S(x) = integral from 1 to x of sqrt(t^{2k} - 1) dt, for real x > 1.

    Raises:
        DomainError: If x <= 1
    """
    x = float(x)
    if not x > 1.0:
        raise DomainError(f"wkb_action requires x > 1, got {x}", details={"x": x})
    degree = 2 * k
    value = integrate_line(
        lambda t: np.sqrt(np.maximum(t.real**degree - 1.0, 0.0)), 1.0, x, cfg or DEFAULT_QUADRATURE
    )
    return float(value.real)
