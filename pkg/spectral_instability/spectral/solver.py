"""
Eigenpairs and instability indices of the Galerkin matrix.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from ..asymptotics.params import OscillatorParams
from ..asymptotics.rates import rate_c
from ..utils.exceptions import AccuracyError, DomainError, PreconditionError, SolverError
from ..utils.logging import log_function_call
from .galerkin import DiscretizationConfig, build_matrix

logger = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-8
ANGLE_TOL = 1e-8
KAPPA_OVERFLOW_RATIO = 1e-300
PRECISION_LIMIT = 1e12


@dataclass(frozen=True, eq=False)
class Eigenpair:
    """
    One eigenpair of the Galerkin matrix.

    coeffs has unit Euclidean norm and its largest-modulus entry is positive real.
    kappa is math.inf when the bilinear norm sum(c_j^2) cancels to below 1e-300.
    """

    index: int
    eigenvalue: complex
    coeffs: np.ndarray = field(repr=False)
    kappa: float

    @property
    def modulus(self) -> float:
        return abs(self.eigenvalue)

    @property
    def parity(self) -> int:
        """0 for even, 1 for odd basis support."""
        return 0 if not np.any(self.coeffs[1::2]) else 1

    @property
    def kappa_overflow(self) -> bool:
        return math.isinf(self.kappa)

    @property
    def precision_limited(self) -> bool:
        return self.kappa > PRECISION_LIMIT

    @property
    def biorthonormal_coeffs(self) -> np.ndarray:
        """Coefficients rescaled so that sum(c_j^2) = 1."""
        if self.kappa_overflow:
            raise DomainError(
                f"Eigenpair {self.index} has no biorthonormal scaling (sum of squares vanishes)",
                details={"index": self.index},
            )
        return self.coeffs / np.sqrt(np.sum(self.coeffs**2))


@dataclass(frozen=True, eq=False)
class SpectrumResult:
    """Retained eigenpairs of one Galerkin solve; immutable and shareable across threads."""

    params: OscillatorParams
    config: DiscretizationConfig
    pairs: Tuple[Eigenpair, ...]
    residuals: np.ndarray = field(repr=False)
    matrix: np.ndarray = field(repr=False)

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.array([pair.eigenvalue for pair in self.pairs])

    @property
    def kappas(self) -> np.ndarray:
        return np.array([pair.kappa for pair in self.pairs])

    @property
    def scale(self) -> float:
        assert self.config.scale is not None
        return self.config.scale

    def pair(self, index: int) -> Eigenpair:
        """Eigenpair by 1-based index."""
        if not 1 <= index <= len(self.pairs):
            raise PreconditionError(
                f"Eigenpair index {index} outside the retained range 1..{len(self.pairs)}",
                details={"index": index, "n_max": len(self.pairs)},
            )
        return self.pairs[index - 1]


def kappa_from_coeffs(coeffs: Sequence[complex]) -> float:
    """
    Instability index sum|c_j|^2 / |sum c_j^2| of a coefficient vector.

    Sums are compensated (math.fsum on real and imaginary parts).

    Returns:
        kappa >= 1, or math.inf when |sum c_j^2| < 1e-300 sum|c_j|^2

    Raises:
        DomainError: If coeffs is empty or zero
    """
    c = np.asarray(coeffs, dtype=complex).ravel()
    numerator = math.fsum(np.abs(c) ** 2)
    if c.size == 0 or numerator == 0.0:
        raise DomainError("kappa_from_coeffs requires a nonzero coefficient vector")
    squares = c * c
    denominator = abs(complex(math.fsum(squares.real), math.fsum(squares.imag)))
    if denominator < KAPPA_OVERFLOW_RATIO * numerator:
        return math.inf
    return max(numerator / denominator, 1.0)


def _fix_phase(vector: np.ndarray) -> np.ndarray:
    vector = vector / np.linalg.norm(vector)
    pivot = vector[np.argmax(np.abs(vector))]
    return vector * (np.conj(pivot) / abs(pivot))


def _solve_block(matrix: np.ndarray, indices: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    block = matrix[np.ix_(indices, indices)]
    try:
        values, vectors = scipy.linalg.eig(block)
    except np.linalg.LinAlgError as e:
        raise SolverError(f"Dense eigensolver failed: {e}") from e
    embedded = np.zeros((matrix.shape[0], values.size), dtype=complex)
    embedded[indices, :] = vectors
    return values, embedded


@log_function_call
def solve_spectrum(params: OscillatorParams, config: DiscretizationConfig) -> SpectrumResult:
    """
    Lowest n_max eigenpairs of the Galerkin matrix, sorted by |lambda| then Re lambda.

    The even and odd basis blocks are solved separately, so every coefficient vector has
    exact pure parity.

    Raises:
        SolverError: If the eigensolver does not converge
        AccuracyError: If a retained pair has residual above 1e-8
    """
    config = config.resolved(params.k)
    matrix = build_matrix(params, config)
    size = matrix.shape[0]

    values_even, vectors_even = _solve_block(matrix, np.arange(0, size, 2))
    values_odd, vectors_odd = _solve_block(matrix, np.arange(1, size, 2))
    values = np.concatenate([values_even, values_odd])
    vectors = np.concatenate([vectors_even, vectors_odd], axis=1)

    order = np.lexsort((values.real, np.abs(values)))[: config.n_max]

    pairs: List[Eigenpair] = []
    residuals = np.empty(len(order))
    for position, column in enumerate(order):
        index = position + 1
        eigenvalue = complex(values[column])
        coeffs = _fix_phase(vectors[:, column])
        residual = float(np.linalg.norm(matrix @ coeffs - eigenvalue * coeffs))
        if residual > RESIDUAL_TOL:
            raise AccuracyError(
                f"Eigenpair {index} residual {residual:.3e} exceeds {RESIDUAL_TOL}",
                details={"index": index, "residual": residual, "theta": params.theta},
            )
        residuals[position] = residual
        pairs.append(Eigenpair(index, eigenvalue, coeffs, kappa_from_coeffs(coeffs)))

        deviation = abs(np.angle(eigenvalue) - params.eigenvalue_angle)
        if deviation > ANGLE_TOL:
            logger.warning(
                f"Eigenvalue {index} off the half-line arg = theta/(k+1) by {deviation:.2e}"
            )

    logger.info(
        f"Solved spectrum k={params.k} theta={params.theta} N={size}: "
        f"{len(pairs)} pairs, max residual {residuals.max():.2e}"
    )
    return SpectrumResult(params, config, tuple(pairs), residuals, matrix)


class KappaRow(NamedTuple):
    n: int
    modulus: float
    kappa: float


def kappa_rows(spectrum: SpectrumResult) -> List[KappaRow]:
    return [KappaRow(pair.index, pair.modulus, pair.kappa) for pair in spectrum.pairs]


def kappa_spectrum(params: OscillatorParams, config: DiscretizationConfig) -> List[KappaRow]:
    """(n, |lambda_n|, kappa_n) for every retained eigenpair."""
    return kappa_rows(solve_spectrum(params, config))


@dataclass(frozen=True)
class RateFit:
    """Least-squares growth rate of log kappa_n against n."""

    slope: float
    compensated_slope: float
    rate_c: float
    relative_gap: float
    prefactor: float
    n_used: Tuple[int, ...]


def fit_instability_rate(
    rows: Sequence[KappaRow],
    params: OscillatorParams,
    n_window: Optional[Tuple[int, int]] = None,
) -> RateFit:
    """
    Fit log kappa_n (raw) and log(sqrt(n) kappa_n) (compensated) against n.

    Overflow-flagged and precision-limited kappa are excluded. relative_gap compares the
    compensated slope with rate_c (absolute gap when rate_c = 0). The prefactor is
    exp(mean(log(sqrt(n) kappa_n) - rate_c n)).

    Raises:
        PreconditionError: If fewer than three usable rows fall in the window
    """
    lo, hi = n_window if n_window is not None else (1, max(row.n for row in rows))
    usable = [
        row
        for row in rows
        if lo <= row.n <= hi and math.isfinite(row.kappa) and row.kappa <= PRECISION_LIMIT
    ]
    if len(usable) < 3:
        raise PreconditionError(
            f"Rate fit needs at least 3 usable indices in [{lo}, {hi}], got {len(usable)}",
            details={"window": [lo, hi]},
        )

    n = np.array([row.n for row in usable], dtype=float)
    log_kappa = np.log([row.kappa for row in usable])
    compensated = log_kappa + 0.5 * np.log(n)

    slope = float(np.polyfit(n, log_kappa, 1)[0])
    compensated_slope = float(np.polyfit(n, compensated, 1)[0])
    c = rate_c(params)
    gap = abs(compensated_slope - c) / c if c > 0 else abs(compensated_slope)
    prefactor = float(np.exp(np.mean(compensated - c * n)))

    logger.debug(f"Rate fit n={lo}..{hi}: slope={slope:.6g}, compensated={compensated_slope:.6g}")
    return RateFit(slope, compensated_slope, c, gap, prefactor, tuple(int(v) for v in n))
