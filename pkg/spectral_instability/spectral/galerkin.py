"""
Hermite-function Galerkin matrix of A(2k, theta).

With the dilation x -> x/alpha the operator becomes (1/alpha^2) P^2 + e^{i theta} alpha^{2k} X^{2k},
where X and P^2 = -D^2 come from the ladder relations of the orthonormal Hermite functions.
The products are formed on a padded basis and truncated so every retained entry is exact.
"""

import logging
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from ..asymptotics.params import OscillatorParams
from ..asymptotics.rates import weyl_modulus
from ..utils.exceptions import ConfigurationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DiscretizationConfig:
    """
    Basis size N, number of trusted eigenpairs and coordinate dilation.

    scale=None selects default_scale(k, n_max) at solve time.
    """

    basis_size: int = 200
    n_max: int = 20
    scale: Optional[float] = None

    def __post_init__(self):
        if self.basis_size < 1:
            raise ConfigurationError(f"basis_size must be positive, got {self.basis_size}")
        if self.n_max < 1:
            raise ConfigurationError(f"n_max must be positive, got {self.n_max}")
        if 4 * self.n_max > self.basis_size:
            raise ConfigurationError(
                f"n_max={self.n_max} exceeds basis_size/4={self.basis_size / 4:g}; "
                "only the lowest quarter of a Galerkin spectrum is trusted",
                details={"basis_size": self.basis_size, "n_max": self.n_max},
            )
        if self.scale is not None and not self.scale > 0:
            raise ConfigurationError(f"scale must be positive, got {self.scale}")

    def resolved(self, k: int) -> "DiscretizationConfig":
        """Copy with the default dilation filled in."""
        if self.scale is not None:
            return self
        return replace(self, scale=default_scale(k, self.n_max))


def default_scale(k: int, n_max: int) -> float:
    """
    Dilation balancing kinetic and potential terms at the n_max-th eigenvalue.

    alpha = |lambda_{n_max}|^{(1-k)/(4k)} from the Weyl law; exactly 1 for k = 1.
    """
    return float(weyl_modulus(n_max - 1, k) ** ((1 - k) / (4 * k)))


def position_matrix(size: int) -> np.ndarray:
    """Matrix of x in the Hermite-function basis: X[j, j+1] = sqrt((j+1)/2)."""
    off = np.sqrt(np.arange(1, size) / 2.0)
    return np.diag(off, 1) + np.diag(off, -1)


def derivative_matrix(size: int) -> np.ndarray:
    """Matrix of d/dx: D[j, j+1] = sqrt((j+1)/2), D[j+1, j] = -sqrt((j+1)/2)."""
    off = np.sqrt(np.arange(1, size) / 2.0)
    return np.diag(off, 1) - np.diag(off, -1)


def build_matrix(params: OscillatorParams, config: DiscretizationConfig) -> np.ndarray:
    """
    Complex symmetric Galerkin matrix of A(2k, theta), bandwidth 2k.

    Args:
        params: Oscillator parameters
        config: Discretization; scale=None uses default_scale

    Returns:
        N x N complex matrix M with M == M.T

    Raises:
        ConfigurationError: If basis_size < 4k
    """
    k = params.k
    n = config.basis_size
    if n < 4 * k:
        raise ConfigurationError(
            f"basis_size={n} is too small for k={k}; need at least {4 * k}",
            details={"basis_size": n, "k": k},
        )
    alpha = config.resolved(k).scale
    assert alpha is not None

    padded = n + 2 * k
    d = derivative_matrix(padded)
    kinetic = -(d @ d)[:n, :n]
    potential = np.linalg.matrix_power(position_matrix(padded), 2 * k)[:n, :n]

    matrix = kinetic / alpha**2 + np.exp(1j * params.theta) * alpha ** (2 * k) * potential
    matrix = 0.5 * (matrix + matrix.T)
    logger.debug(f"Built Galerkin matrix k={k} theta={params.theta} N={n} alpha={alpha:.6g}")
    return matrix


def bandwidth(matrix: np.ndarray) -> int:
    """Largest |i - j| with a nonzero entry."""
    rows, cols = np.nonzero(matrix)
    if rows.size == 0:
        return 0
    return int(np.max(np.abs(rows - cols)))
