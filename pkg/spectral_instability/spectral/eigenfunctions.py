"""
Pointwise evaluation of Galerkin eigenfunctions and leading-order WKB comparison.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np

from ..asymptotics.params import OscillatorParams
from ..asymptotics.phase import wkb_action
from ..asymptotics.rates import h_of_modulus
from ..utils.exceptions import NumericalDegeneracyError, PreconditionError
from .galerkin import DiscretizationConfig
from .solver import Eigenpair

logger = logging.getLogger(__name__)

WKB_MAX_H = 0.2
WKB_WINDOW = (1.5, 2.5)
WKB_REFERENCE = 2.0
WKB_POINTS = 101
WKB_MIN_POINTS = 5
# Values within this factor of the coefficient noise floor are not compared
NOISE_MARGIN = 1e6
NOISE_EPS = 1e-15


def hermite_functions(size: int, xs: Sequence[float]) -> np.ndarray:
    """
    Orthonormal Hermite functions phi_0..phi_{size-1} at xs, shape (size, len(xs)).

    phi_0 = pi^{-1/4} e^{-x^2/2},
    phi_{j+1} = sqrt(2/(j+1)) x phi_j - sqrt(j/(j+1)) phi_{j-1}.
    """
    x = np.asarray(xs, dtype=float)
    table = np.zeros((size, x.size))
    table[0] = np.pi**-0.25 * np.exp(-0.5 * x**2)
    if size > 1:
        table[1] = math.sqrt(2.0) * x * table[0]
    for j in range(1, size - 1):
        table[j + 1] = (
            math.sqrt(2.0 / (j + 1)) * x * table[j] - math.sqrt(j / (j + 1)) * table[j - 1]
        )
    return table


@dataclass(frozen=True, eq=False)
class SampledEigenfunction:
    """Eigenfunction values at sample points, with range warnings."""

    xs: np.ndarray
    values: np.ndarray
    noise_floor: np.ndarray = field(repr=False)
    warnings: Tuple[str, ...] = ()


def resolvable_radius(basis_size: int, scale: float) -> float:
    """Largest |x| the basis resolves: scale * sqrt(2N)."""
    return scale * math.sqrt(2.0 * basis_size)


def evaluate_eigenfunction(
    coeffs: Sequence[complex], scale: float, xs: Sequence[float]
) -> SampledEigenfunction:
    """
    Evaluate u(x) = scale^{-1/2} sum_j c_j phi_j(x / scale).

    Points beyond the resolvable radius are still evaluated; a warning is attached.

    Args:
        coeffs: Coefficients over the Hermite basis
        scale: Coordinate dilation used to build the matrix
        xs: Real sample points

    Returns:
        SampledEigenfunction with values and a per-point noise floor
    """
    c = np.asarray(coeffs, dtype=complex)
    x = np.asarray(xs, dtype=float)
    table = hermite_functions(c.size, x / scale)
    weight = scale**-0.5
    values = weight * (c @ table)
    support = c != 0
    noise = NOISE_EPS * weight * np.abs(table[support]).sum(axis=0)

    warnings: List[str] = []
    radius = resolvable_radius(c.size, scale)
    outside = np.abs(x) > radius
    if np.any(outside):
        message = (
            f"{int(outside.sum())} point(s) beyond the resolvable radius {radius:.6g} "
            f"(basis size {c.size}, scale {scale:.6g})"
        )
        logger.warning(message)
        warnings.append(message)
    return SampledEigenfunction(x, values, noise, tuple(warnings))


def wkb_leading_error(
    params: OscillatorParams,
    eigenpair: Eigenpair,
    config: DiscretizationConfig,
    window: Tuple[float, float] = WKB_WINDOW,
    reference: float = WKB_REFERENCE,
    points: int = WKB_POINTS,
) -> float:
    """
    Max relative deviation of the rescaled eigenfunction from its leading WKB form.

    The eigenpair must come from the selfadjoint rotation (theta = 0) of the problem;
    callers at theta != 0 solve that rotation themselves, since the rotated eigenfunctions
    are its complex dilations. On y in window, psi_h(y) = u(h^{-1/(k+1)} y) and
    (y^{2k}-1)^{-1/4} exp(-S(y)/h) are both normalized at the grid point nearest to
    reference. Points where |psi_h| is within NOISE_MARGIN of the coefficient noise floor
    are dropped.

    Raises:
        PreconditionError: If params is not selfadjoint or h > 0.2. Also if the window does
            not lie beyond the turning point
        NumericalDegeneracyError: If fewer than 5 points or the reference point survive
    """
    k = params.k
    lo, hi = window
    if not 1.0 < lo < hi:
        raise PreconditionError(f"WKB window must satisfy 1 < lo < hi, got {window}")

    if not params.is_selfadjoint:
        raise PreconditionError(
            f"WKB comparison needs an eigenpair of the theta = 0 problem, got theta={params.theta}",
            details={"k": k, "theta": params.theta, "index": eigenpair.index},
        )
    pair = eigenpair
    config = config.resolved(k)

    h = h_of_modulus(pair.modulus, k)
    if h > WKB_MAX_H:
        raise PreconditionError(
            f"Eigenpair {pair.index} has h={h:.4g} > {WKB_MAX_H}; use a higher index",
            details={"index": pair.index, "h": h},
        )

    ys = np.linspace(lo, hi, points)
    ref_position = int(np.argmin(np.abs(ys - reference)))
    stretch = h ** (-1.0 / (k + 1))
    assert config.scale is not None
    sample = evaluate_eigenfunction(pair.coeffs, config.scale, ys * stretch)

    keep = np.abs(sample.values) > NOISE_MARGIN * sample.noise_floor
    if not keep[ref_position] or keep.sum() < WKB_MIN_POINTS:
        raise NumericalDegeneracyError(
            f"Only {int(keep.sum())} WKB sample(s) above the noise floor in window {window}",
            details={"index": pair.index, "h": h},
        )

    y_ref = ys[ref_position]
    s_ref = wkb_action(k, y_ref)
    deviations = []
    for position in np.flatnonzero(keep):
        y = ys[position]
        numeric = sample.values[position] / sample.values[ref_position]
        amplitude = ((y ** (2 * k) - 1.0) / (y_ref ** (2 * k) - 1.0)) ** -0.25
        wkb = amplitude * math.exp(-(wkb_action(k, y) - s_ref) / h)
        deviations.append(abs(numeric - wkb) / wkb)

    error = float(max(deviations))
    logger.debug(f"WKB deviation index={pair.index} h={h:.4g}: {error:.3e} ({len(deviations)} pts)")
    return error

