"""
Projection series of the semigroup generated by A(2k, theta).
"""

from .series import (
    ClassificationResult,
    Convergence,
    SemigroupSeriesReport,
    TermSeries,
    classify_convergence,
    compare_partial_sum,
    default_window,
    empirical_crossover,
    semigroup_report,
    semigroup_reports,
    series_terms,
    term_norms,
)

__all__ = [
    "ClassificationResult",
    "Convergence",
    "SemigroupSeriesReport",
    "TermSeries",
    "classify_convergence",
    "compare_partial_sum",
    "default_window",
    "empirical_crossover",
    "semigroup_report",
    "semigroup_reports",
    "series_terms",
    "term_norms",
]
