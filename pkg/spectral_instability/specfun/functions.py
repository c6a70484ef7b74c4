"""
Real Gamma and complex Airy Ai.

Both delegate to scipy.special; this module adds the domain checks and the
scalar-in/scalar-out contract the rest of the package relies on.
"""

import logging
import math
from typing import Tuple

import numpy as np
from scipy import special

from ..utils.exceptions import DomainError

logger = logging.getLogger(__name__)

# Above this modulus the Airy function under/overflows double precision on most rays.
AIRY_MAX_MODULUS = 30.0


def gamma_real(x: float) -> float:
    """
    Gamma function on the positive real axis.

    Args:
        x: Positive real argument

    Returns:
        Gamma(x)

    Raises:
        DomainError: If x is not a finite positive real
    """
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(
            f"gamma_real requires a finite positive argument, got {x}",
            details={"x": x},
        )
    return float(special.gamma(x))


def airy_ai_with_derivative(z: complex) -> Tuple[complex, complex]:
    """Return (Ai(z), Ai'(z)) for complex z."""
    z = complex(z)
    if abs(z) > AIRY_MAX_MODULUS:
        logger.debug(f"Airy argument |z|={abs(z):.3g} beyond {AIRY_MAX_MODULUS}; may underflow")
    ai, aip, _, _ = special.airy(np.complex128(z))
    return complex(ai), complex(aip)


def airy_ai(z: complex) -> complex:
    """
    Airy function Ai of a complex argument.

    Args:
        z: Complex argument

    Returns:
        Ai(z) as a Python complex
    """
    return airy_ai_with_derivative(z)[0]
