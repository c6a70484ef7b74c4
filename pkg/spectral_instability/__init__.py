"""Spectral instability of non-selfadjoint anharmonic oscillators."""

__version__ = "0.1.0"

from .asymptotics import OscillatorParams, asymptotic_report
from .spectral import DiscretizationConfig, solve_spectrum
from .utils.exceptions import SpectralInstabilityError
from .utils.logging import get_logger, setup_logging

__all__ = [
    "__version__",
    "DiscretizationConfig",
    "OscillatorParams",
    "SpectralInstabilityError",
    "asymptotic_report",
    "get_logger",
    "setup_logging",
    "solve_spectrum",
]
