"""
Logging and error utilities.
"""

from .exceptions import (
    AccuracyError,
    DomainError,
    NumericalError,
    SpectralInstabilityError,
    format_error_for_user,
)
from .logging import get_logger, log_function_call, setup_logging

__all__ = [
    "AccuracyError",
    "DomainError",
    "NumericalError",
    "SpectralInstabilityError",
    "format_error_for_user",
    "get_logger",
    "log_function_call",
    "setup_logging",
]
