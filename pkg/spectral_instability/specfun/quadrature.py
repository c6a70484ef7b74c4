"""
Adaptive Gauss-Legendre quadrature on straight complex segments.

The segment [a, b] is parametrized by s in [0, 1]. Each panel is integrated with an
n-point Gauss-Legendre rule on the whole panel and on its two halves; the halves give
the value, the difference gives the error estimate. Panels with the largest estimated
error are bisected first until the total estimate meets the tolerance.
"""

import heapq
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, List, Tuple

import numpy as np

from ..utils.exceptions import ConfigurationError, QuadratureConvergenceError

logger = logging.getLogger(__name__)

ComplexFunction = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and rule size for integrate_line."""

    abs_tol: float = 1e-13
    rel_tol: float = 1e-12
    max_subdivisions: int = 500
    rule_order: int = 15

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ConfigurationError(f"abs_tol must be positive, got {self.abs_tol}")
        if not self.rel_tol > 0:
            raise ConfigurationError(f"rel_tol must be positive, got {self.rel_tol}")
        if self.max_subdivisions < 1:
            raise ConfigurationError(
                f"max_subdivisions must be a positive integer, got {self.max_subdivisions}"
            )
        if self.rule_order < 2:
            raise ConfigurationError(f"rule_order must be at least 2, got {self.rule_order}")

    def tolerance(self, value: complex) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))


@lru_cache(maxsize=16)
def _unit_rule(n: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped to [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w


def _evaluate(f: ComplexFunction, t: np.ndarray) -> np.ndarray:
    values = np.asarray(f(t), dtype=complex)
    return np.broadcast_to(values, t.shape)


def _rule(f: ComplexFunction, a: complex, length: complex, s0: float, s1: float, n: int) -> complex:
    nodes, weights = _unit_rule(n)
    width = s1 - s0
    t = a + length * (s0 + width * nodes)
    return complex(np.sum(weights * _evaluate(f, t)) * width * length)


def _panel(
    f: ComplexFunction, a: complex, length: complex, s0: float, s1: float, n: int
) -> Tuple[complex, float]:
    mid = 0.5 * (s0 + s1)
    coarse = _rule(f, a, length, s0, s1, n)
    fine = _rule(f, a, length, s0, mid, n) + _rule(f, a, length, mid, s1, n)
    error = abs(fine - coarse)
    if not np.isfinite(error):
        error = np.inf
    return fine, float(error)


def integrate_line(
    f: ComplexFunction, a: complex, b: complex, cfg: QuadratureConfig = QuadratureConfig()
) -> complex:
    """
    Integrate f along the straight segment from a to b.

    Args:
        f: Vectorized complex function; called with an ndarray of complex points
        a: Start point
        b: End point
        cfg: Tolerances and rule order

    Returns:
        The integral of f(t) dt over [a, b]

    Raises:
        QuadratureConvergenceError: If max_subdivisions bisections do not reach tolerance
    """
    a = complex(a)
    length = complex(b) - a
    if length == 0:
        return 0j

    n = cfg.rule_order
    value, error = _panel(f, a, length, 0.0, 1.0, n)
    # max-heap on error; the counter keeps ordering stable for equal errors
    heap: List[Tuple[float, int, float, float, complex]] = [(-error, 0, 0.0, 1.0, value)]
    total_value = value
    total_error = error
    subdivisions = 0

    while total_error > cfg.tolerance(total_value):
        if subdivisions >= cfg.max_subdivisions:
            raise QuadratureConvergenceError(
                f"Quadrature did not converge after {subdivisions} subdivisions "
                f"(error estimate {total_error:.3e})",
                best_estimate=total_value,
                details={"a": str(a), "b": str(b), "error_estimate": total_error},
            )
        _, _, s0, s1, _ = heapq.heappop(heap)
        mid = 0.5 * (s0 + s1)
        left_value, left_error = _panel(f, a, length, s0, mid, n)
        right_value, right_error = _panel(f, a, length, mid, s1, n)
        subdivisions += 1
        heapq.heappush(heap, (-left_error, 2 * subdivisions - 1, s0, mid, left_value))
        heapq.heappush(heap, (-right_error, 2 * subdivisions, mid, s1, right_value))

        # totals re-summed from the live panels
        total_value = complex(sum(entry[4] for entry in heap))
        total_error = float(sum(-entry[0] for entry in heap))

    logger.debug(
        f"integrate_line [{a}, {b}]: {subdivisions} subdivisions, error estimate {total_error:.2e}"
    )
    return total_value
