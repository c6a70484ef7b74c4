"""
Spectral projection series of the semigroup e^{-tA}: term norms, convergence
classification and comparison with the matrix exponential.

The n-th term e^{-t lambda_n} Pi_n has operator norm e^{-t Re lambda_n} kappa_n. For k = 1
the term exponent c_1 n - 2t cos(theta/2) n changes sign at a finite time, so the series
is not normally convergent for small t; for k >= 2 it converges for every t > 0.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from ..asymptotics.params import OscillatorParams
from ..asymptotics.rates import rate_threshold, semigroup_threshold
from ..optimization.parallel import ordered_map
from ..optimization.spectrum_cache import get_spectrum
from ..spectral.galerkin import DiscretizationConfig
from ..spectral.solver import SpectrumResult
from ..utils.exceptions import DomainError, PreconditionError, RefusalError

logger = logging.getLogger(__name__)

SLOPE_TOL = 0.02
MIN_WINDOW = 8
DEFAULT_WINDOW_START = 5


class Convergence(str, Enum):
    CONVERGING = "converging"
    DIVERGING = "diverging"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True, eq=False)
class TermSeries:
    """Term norms for the usable indices and the count of excluded (kappa-flagged) terms."""

    indices: np.ndarray
    values: np.ndarray
    log_values: np.ndarray = field(repr=False)
    excluded: int


@dataclass(frozen=True)
class ClassificationResult:
    classification: Convergence
    slope: Optional[float]
    reason: str = ""


@dataclass(frozen=True, eq=False)
class SemigroupSeriesReport:
    """Per-time summary of the projection series."""

    t: float
    indices: np.ndarray = field(repr=False)
    term_norms: np.ndarray = field(repr=False)
    excluded_terms: int
    classification: Convergence
    fitted_slope: Optional[float]
    window: Tuple[int, int]
    semigroup_threshold: Optional[float]
    rate_threshold: Optional[float]
    empirical_crossover: Optional[float]
    comparison_error: Optional[float]
    reason: str = ""

    @property
    def thresholds(self) -> Tuple[Optional[float], Optional[float]]:
        """(closed-form threshold T, empirical crossover t*)."""
        return self.semigroup_threshold, self.empirical_crossover

    def to_dict(self) -> Dict[str, Any]:
        return {
            "t": self.t,
            "indices": [int(n) for n in self.indices],
            "term_norms": [float(v) for v in self.term_norms],
            "excluded_terms": self.excluded_terms,
            "classification": self.classification.value,
            "fitted_slope": self.fitted_slope,
            "window": list(self.window),
            "semigroup_threshold": self.semigroup_threshold,
            "rate_threshold": self.rate_threshold,
            "empirical_crossover": self.empirical_crossover,
            "comparison_error": self.comparison_error,
            "reason": self.reason,
        }


def _check_time(t: float) -> None:
    if not t > 0:
        raise DomainError(f"Semigroup time must be positive, got {t}", details={"t": t})


def series_terms(spectrum: SpectrumResult, t: float) -> TermSeries:
    """Terms e^{-t Re lambda_n} kappa_n of an already solved spectrum."""
    _check_time(t)
    usable = [pair for pair in spectrum.pairs if not pair.precision_limited]
    excluded = len(spectrum.pairs) - len(usable)
    if excluded:
        logger.debug(f"{excluded} term(s) excluded for flagged kappa at t={t}")
    indices = np.array([pair.index for pair in usable], dtype=int)
    log_values = np.array([-t * pair.eigenvalue.real + math.log(pair.kappa) for pair in usable])
    return TermSeries(indices, np.exp(log_values), log_values, excluded)


def term_norms(params: OscillatorParams, config: DiscretizationConfig, t: float) -> TermSeries:
    """
    Operator norms e^{-t Re lambda_n} kappa_n of the series terms.

    Overflow-flagged and precision-limited kappa are excluded and counted.
    """
    return series_terms(get_spectrum(params, config), t)


def classify_convergence(terms: Sequence[float], tol: float = SLOPE_TOL) -> ClassificationResult:
    """
    Classify a window of term norms by the least-squares slope of log(term) against n.

    NaN entries mark excluded terms and make the result inconclusive.

    Raises:
        PreconditionError: If the window holds fewer than 8 terms
    """
    values = np.asarray(terms, dtype=float)
    if values.size < MIN_WINDOW:
        raise PreconditionError(
            f"Convergence classification needs at least {MIN_WINDOW} terms, got {values.size}"
        )
    if np.any(np.isnan(values)):
        return ClassificationResult(
            Convergence.INCONCLUSIVE, None, "window contains excluded terms"
        )
    if np.any(values <= 0):
        return ClassificationResult(Convergence.INCONCLUSIVE, None, "non-positive term norm")
    return _classify_log_terms(np.arange(values.size, dtype=float), np.log(values), tol)


def _classify_log_terms(n: np.ndarray, log_terms: np.ndarray, tol: float) -> ClassificationResult:
    slope = float(np.polyfit(n, log_terms, 1)[0])
    if slope < -tol:
        return ClassificationResult(Convergence.CONVERGING, slope)
    if slope > tol:
        return ClassificationResult(Convergence.DIVERGING, slope)
    return ClassificationResult(Convergence.INCONCLUSIVE, slope, f"|slope| <= {tol}")


def default_window(n_max: int) -> Tuple[int, int]:
    """Fit window [min(5, n_max-7), n_max], at least 8 indices wide."""
    return max(1, min(DEFAULT_WINDOW_START, n_max - MIN_WINDOW + 1)), n_max


def empirical_crossover(spectrum: SpectrumResult, window: Tuple[int, int]) -> Optional[float]:
    """Time t* = slope(log kappa_n) / slope(Re lambda_n) over the window."""
    lo, hi = window
    pairs = [p for p in spectrum.pairs if lo <= p.index <= hi and not p.precision_limited]
    if len(pairs) < 2:
        return None
    n = np.array([p.index for p in pairs], dtype=float)
    kappa_slope = float(np.polyfit(n, np.log([p.kappa for p in pairs]), 1)[0])
    real_slope = float(np.polyfit(n, [p.eigenvalue.real for p in pairs], 1)[0])
    if real_slope <= 0:
        return None
    return kappa_slope / real_slope


def _threshold_candidates(params: OscillatorParams) -> Tuple[Optional[float], Optional[float]]:
    if params.k == 1 and params.abs_theta <= math.pi / 2:
        return semigroup_threshold(params.theta), rate_threshold(params.theta)
    return None, None


def _partial_sum_error(spectrum: SpectrumResult, t: float, v: np.ndarray, n_terms: int) -> float:
    partial = np.zeros(v.shape, dtype=complex)
    for pair in spectrum.pairs[:n_terms]:
        b = pair.biorthonormal_coeffs
        partial += np.exp(-t * pair.eigenvalue) * np.dot(v, b) * b
    oracle = scipy.linalg.expm(-t * spectrum.matrix) @ v
    return float(np.linalg.norm(partial - oracle) / np.linalg.norm(v))


def compare_partial_sum(
    params: OscillatorParams,
    config: DiscretizationConfig,
    t: float,
    v: Sequence[complex],
    n_terms: int,
) -> float:
    """
    Relative error of the n_terms projection partial sum against expm(-tM) v.

    Projections use biorthonormal coefficients: Pi_n v = (sum_j v_j b_j) b.

    Raises:
        RefusalError: If the series is classified diverging at t
        PreconditionError: If n_terms is outside 1..n_max or v has the wrong size
    """
    _check_time(t)
    spectrum = get_spectrum(params, config)
    vector = np.asarray(v, dtype=complex)
    if vector.shape != (spectrum.matrix.shape[0],) or not np.any(vector):
        raise PreconditionError(
            f"v must be a nonzero vector of length {spectrum.matrix.shape[0]}",
            details={"shape": list(vector.shape)},
        )
    if not 1 <= n_terms <= len(spectrum.pairs):
        raise PreconditionError(
            f"n_terms must lie in 1..{len(spectrum.pairs)}, got {n_terms}",
            details={"n_terms": n_terms},
        )

    window = default_window(len(spectrum.pairs))
    classification = _classify_window(spectrum, t, window)
    if classification.classification is Convergence.DIVERGING:
        raise RefusalError(
            f"The projection series is not normally convergent at t={t} "
            f"(term log-slope {classification.slope:.4g}); a partial sum does not approximate "
            "the semigroup there",
            details={"t": t, "slope": classification.slope},
        )
    return _partial_sum_error(spectrum, t, vector, n_terms)


def _classify_window(
    spectrum: SpectrumResult, t: float, window: Tuple[int, int]
) -> ClassificationResult:
    lo, hi = window
    terms = series_terms(spectrum, t)
    in_window = (terms.indices >= lo) & (terms.indices <= hi)
    expected = hi - lo + 1
    if in_window.sum() < expected:
        return ClassificationResult(
            Convergence.INCONCLUSIVE, None, "window contains excluded terms"
        )
    if expected < MIN_WINDOW:
        return ClassificationResult(
            Convergence.INCONCLUSIVE,
            None,
            f"window [{lo}, {hi}] holds {expected} terms, classification needs {MIN_WINDOW}",
        )
    return _classify_log_terms(
        terms.indices[in_window].astype(float), terms.log_values[in_window], SLOPE_TOL
    )


def semigroup_report(
    params: OscillatorParams,
    config: DiscretizationConfig,
    t: float,
    window: Optional[Tuple[int, int]] = None,
) -> SemigroupSeriesReport:
    """
    Term norms, classification, threshold candidates and, when converging, the
    partial-sum error for v = e_1 (the Gaussian ground state of the basis).
    """
    spectrum = get_spectrum(params, config)
    window = window or default_window(len(spectrum.pairs))
    terms = series_terms(spectrum, t)
    result = _classify_window(spectrum, t, window)
    closed_form, rate = _threshold_candidates(params)

    comparison = None
    if result.classification is Convergence.CONVERGING:
        gaussian = np.zeros(spectrum.matrix.shape[0], dtype=complex)
        gaussian[0] = 1.0
        comparison = _partial_sum_error(spectrum, t, gaussian, len(spectrum.pairs))

    report = SemigroupSeriesReport(
        t=float(t),
        indices=terms.indices,
        term_norms=terms.values,
        excluded_terms=terms.excluded,
        classification=result.classification,
        fitted_slope=result.slope,
        window=window,
        semigroup_threshold=closed_form,
        rate_threshold=rate,
        empirical_crossover=empirical_crossover(spectrum, window),
        comparison_error=comparison,
        reason=result.reason,
    )
    logger.info(f"Semigroup t={t}: {report.classification.value} (slope {report.fitted_slope})")
    return report


def semigroup_reports(
    params: OscillatorParams,
    config: DiscretizationConfig,
    times: Sequence[float],
    max_workers: Optional[int] = None,
) -> List[SemigroupSeriesReport]:
    """Reports for several times, evaluated through ordered_map."""
    get_spectrum(params, config)
    return ordered_map(lambda t: semigroup_report(params, config, t), times, max_workers)
