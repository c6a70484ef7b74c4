"""
Resolvent norms ||(M - z)^{-1}|| = 1 / sigma_min(M - z I).

Small matrices use a full singular value decomposition per node. Larger ones reduce M
once to complex Schur form T and run inverse iteration on (T - z)^*(T - z) with two
triangular solves per step, seeded from the previous node.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
import scipy.linalg

logger = logging.getLogger(__name__)

SENTINEL_RATIO = 1e-14
SVD_MAX_SIZE = 300
INVERSE_ITERATION_RTOL = 1e-6
INVERSE_ITERATION_MAX_STEPS = 200


def spectral_norm(matrix: np.ndarray) -> float:
    return float(scipy.linalg.svdvals(matrix)[0])


def _as_resolvent_norm(sigma: float, norm: float) -> float:
    if not math.isfinite(sigma) or sigma < SENTINEL_RATIO * norm:
        return math.inf
    return 1.0 / sigma


def resolvent_norm(matrix: np.ndarray, z: complex, matrix_norm: Optional[float] = None) -> float:
    """
    Resolvent norm at z by singular value decomposition.

    Args:
        matrix: Square matrix M
        z: Complex shift
        matrix_norm: ||M||_2 if already known

    Returns:
        1/sigma_min(M - zI), or math.inf when sigma_min < 1e-14 ||M||
    """
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"resolvent_norm needs a square matrix, got shape {m.shape}")
    norm = spectral_norm(m) if matrix_norm is None else matrix_norm
    shifted = m - z * np.eye(m.shape[0])
    sigma = float(scipy.linalg.svdvals(shifted)[-1])
    return _as_resolvent_norm(sigma, norm)


@dataclass
class SchurResolvent:
    """Resolvent norms from a precomputed complex Schur form; read-only after construction."""

    triangular: np.ndarray
    norm: float

    @classmethod
    def from_matrix(cls, matrix: np.ndarray, norm: Optional[float] = None) -> "SchurResolvent":
        m = np.asarray(matrix, dtype=complex)
        triangular, _ = scipy.linalg.schur(m, output="complex")
        return cls(np.triu(triangular), spectral_norm(m) if norm is None else norm)

    def sigma_min(self, z: complex, seed: Optional[np.ndarray] = None) -> Tuple[float, np.ndarray]:
        """
        Smallest singular value of T - zI and the converged right singular vector.

        Args:
            z: Complex shift
            seed: Starting vector (the previous node's vector along a row)
        """
        size = self.triangular.shape[0]
        shifted = self.triangular - z * np.eye(size)
        if np.min(np.abs(np.diag(shifted))) == 0.0:
            return 0.0, np.ones(size, dtype=complex) / math.sqrt(size)

        q = np.ones(size, dtype=complex) if seed is None else np.asarray(seed, dtype=complex)
        q = q / np.linalg.norm(q)
        sigma_old = math.inf
        sigma = math.inf
        for _ in range(INVERSE_ITERATION_MAX_STEPS):
            y = scipy.linalg.solve_triangular(shifted, q, trans="C", lower=False)
            w = scipy.linalg.solve_triangular(shifted, y, lower=False)
            growth = np.linalg.norm(w)
            if not np.isfinite(growth) or growth == 0.0:
                return 0.0, q
            # ||(A^*A)^{-1} q|| -> 1/sigma_min^2
            sigma = 1.0 / math.sqrt(growth)
            q = w / growth
            if abs(sigma / sigma_old - 1.0) < INVERSE_ITERATION_RTOL:
                break
            sigma_old = sigma
        else:
            logger.debug(f"Inverse iteration at z={z} stopped at the step limit")
        return sigma, q

    def resolvent_norm(
        self, z: complex, seed: Optional[np.ndarray] = None
    ) -> Tuple[float, np.ndarray]:
        sigma, vector = self.sigma_min(z, seed)
        return _as_resolvent_norm(sigma, self.norm), vector
