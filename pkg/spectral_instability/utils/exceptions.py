"""
Custom exceptions and error handling utilities for spectral-instability.

Exceptions fall into two families. Domain errors (bad mathematical input, violated
preconditions) map to CLI exit status 1; numerical errors (non-convergence, accuracy
thresholds) map to exit status 2.
"""

import functools
import traceback
from typing import Any, Callable, Dict, Optional, TypeVar, Union

from .logging import get_logger

F = TypeVar("F", bound=Callable[..., Any])

logger = get_logger(__name__)


class SpectralInstabilityError(Exception):
    """Base exception for all spectral-instability errors."""

    exit_code = 1

    def __init__(
        self, message: str, error_code: Optional[str] = None, details: Optional[Dict] = None
    ):
        self.message = message
        self.error_code = error_code or self.__class__.__name__
        self.details = details or {}
        super().__init__(self.message)

    def to_dict(self) -> Dict[str, Any]:
        """Convert exception to dictionary for logging and report files."""
        return {
            "error_type": self.__class__.__name__,
            "error_code": self.error_code,
            "message": self.message,
            "details": self.details,
        }


class DomainError(SpectralInstabilityError):
    """Input outside the mathematical domain of an operation."""


class ValidationError(SpectralInstabilityError):
    """Errors related to input validation."""


class ConfigurationError(SpectralInstabilityError):
    """Errors related to configuration and setup."""


class BranchCutError(DomainError):
    """A square root was requested on its branch cut without a tracked history."""


class BranchProximityError(DomainError):
    """An integration path passes too close to a branch point."""


class DegenerateAngleError(DomainError):
    """A closed form degenerates at the requested angle (typically theta = 0)."""


class PreconditionError(DomainError):
    """A documented precondition of an operation does not hold."""


class RefusalError(DomainError):
    """The requested computation is mathematically meaningless in this regime."""


class NumericalError(SpectralInstabilityError):
    """Base class for numerical failures."""

    exit_code = 2


class QuadratureConvergenceError(NumericalError):
    """Adaptive quadrature exhausted its subdivision budget."""

    def __init__(self, message: str, best_estimate: complex, **kwargs):
        self.best_estimate = best_estimate
        super().__init__(message, **kwargs)
        self.details.setdefault("best_estimate", str(best_estimate))


class NumericalDegeneracyError(NumericalError):
    """A numerically estimated quantity is non-finite or unstable."""


class SolverError(NumericalError):
    """The dense eigensolver failed to converge."""


class AccuracyError(NumericalError):
    """A computed result violates its accuracy contract."""


def with_error_context(context: Dict[str, Any]) -> Callable[[F], F]:
    """
    Decorator to add context information to any exceptions raised.

    Args:
        context: Dictionary of context information to add to exceptions

    Example:
        @with_error_context({"command": "kappa"})
        def run_kappa(config):
            ...
    """

    def decorator(func: F) -> F:
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except SpectralInstabilityError as e:
                e.details.update(context)
                raise
            except (ArithmeticError, ValueError, RuntimeError) as e:
                raise NumericalError(
                    f"Unexpected error in {func.__name__}: {e}",
                    details={"original_exception": repr(e), **context},
                ) from e

        return wrapper  # type: ignore[return-value]

    return decorator


def format_error_for_user(
    error: Union[Exception, SpectralInstabilityError], include_details: bool = False
) -> str:
    """
    Format error for user-friendly display.

    Args:
        error: Exception to format
        include_details: Whether to include technical details

    Returns:
        Formatted error message
    """
    if isinstance(error, SpectralInstabilityError):
        message = error.message
        if include_details and error.details:
            details_str = ", ".join(f"{k}: {v}" for k, v in error.details.items())
            message += f" (Details: {details_str})"
        return message
    return f"An unexpected error occurred: {error}"


def get_error_summary(error: Exception) -> Dict[str, Any]:
    """
    Get a comprehensive summary of an error for logging/debugging.

    Args:
        error: Exception to summarize

    Returns:
        Dictionary with error information
    """
    summary = {
        "error_type": type(error).__name__,
        "message": str(error),
        "traceback": "".join(traceback.format_exception(type(error), error, error.__traceback__)),
    }

    if isinstance(error, SpectralInstabilityError):
        summary.update(error.to_dict())

    return summary
