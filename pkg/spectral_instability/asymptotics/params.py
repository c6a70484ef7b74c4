"""
Oscillator parameters (k, theta) for A(2k, theta) = -d^2/dx^2 + e^{i theta} x^{2k}.
"""

import math
from dataclasses import dataclass

from ..utils.exceptions import DomainError

THETA_CONSTRAINT = "|θ| < (k+1)π/2k"


@dataclass(frozen=True)
class OscillatorParams:
    """Half-degree k of the potential and rotation angle theta in radians."""

    k: int
    theta: float

    def __post_init__(self):
        if isinstance(self.k, bool) or not isinstance(self.k, int) or self.k < 1:
            raise DomainError(
                f"k must be a positive integer, got {self.k!r}", details={"k": self.k}
            )
        if not math.isfinite(self.theta):
            raise DomainError(
                f"theta must be finite, got {self.theta}", details={"theta": self.theta}
            )
        if abs(self.theta) >= self.theta_limit:
            raise DomainError(
                f"theta={self.theta} violates {THETA_CONSTRAINT} "
                f"(limit {self.theta_limit:.12g} for k={self.k})",
                details={"k": self.k, "theta": self.theta, "limit": self.theta_limit},
            )

    @property
    def theta_limit(self) -> float:
        return (self.k + 1) * math.pi / (2 * self.k)

    @property
    def abs_theta(self) -> float:
        return abs(self.theta)

    @property
    def degree(self) -> int:
        return 2 * self.k

    @property
    def ray_angle(self) -> float:
        """Argument |theta|/(2(k+1)) of the ray carrying the phase integral."""
        return self.abs_theta / (2 * (self.k + 1))

    @property
    def eigenvalue_angle(self) -> float:
        """Argument theta/(k+1) of the half-line holding the spectrum."""
        return self.theta / (self.k + 1)

    @property
    def is_selfadjoint(self) -> bool:
        return self.theta == 0.0

    def mirrored(self) -> "OscillatorParams":
        return OscillatorParams(k=self.k, theta=-self.theta)
