"""
Validated run configuration for the command-line front end.
"""

import math
from enum import Enum
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..asymptotics.params import THETA_CONSTRAINT, OscillatorParams
from ..pseudospectra.grid import GridSpec
from ..spectral.galerkin import DiscretizationConfig


class Command(str, Enum):
    SPECTRUM = "spectrum"
    KAPPA = "kappa"
    ASYMPTOTICS = "asymptotics"
    PSEUDOSPECTRUM = "pseudospectrum"
    SEMIGROUP = "semigroup"
    VERIFY = "verify"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    BOTH = "both"


class RunConfig(BaseModel):
    """One CLI invocation: command, operator parameters, discretization and outputs."""

    model_config = ConfigDict(frozen=True)

    command: Command = Field(..., description="Command to run")
    k: int = Field(..., ge=1, description="Potential degree parameter, V = e^{i theta} x^{2k}")
    theta: float = Field(..., description="Rotation angle in radians")
    basis_size: int = Field(200, ge=1, description="Hermite basis size N")
    n_max: int = Field(20, ge=1, description="Number of trusted eigenpairs")
    scale: Optional[float] = Field(None, gt=0, description="Coordinate dilation alpha")
    grid: Optional[str] = Field(None, description="Grid 're0,re1,im0,im1,nx,ny'")
    t_values: Optional[List[float]] = Field(None, description="Semigroup times")
    output_dir: Path = Field(Path("results"), description="Output directory")
    format: OutputFormat = Field(OutputFormat.JSON, description="Artifact format")

    @model_validator(mode="after")
    def check_consistency(self) -> "RunConfig":
        limit = (self.k + 1) * math.pi / (2 * self.k)
        if not math.isfinite(self.theta) or abs(self.theta) >= limit:
            raise ValueError(
                f"theta={self.theta} is out of range: require {THETA_CONSTRAINT} "
                f"(here |theta| < {limit:.6f} rad for k={self.k}; angles are in radians)"
            )
        if 4 * self.n_max > self.basis_size:
            raise ValueError(
                f"n_max={self.n_max} requires basis_size >= {4 * self.n_max}, "
                f"got {self.basis_size}"
            )
        if self.command is Command.PSEUDOSPECTRUM and not self.grid:
            raise ValueError("pseudospectrum requires --grid re0,re1,im0,im1,nx,ny")
        if self.command is Command.PSEUDOSPECTRUM:
            GridSpec.parse(self.grid)
        if self.command is Command.SEMIGROUP:
            if not self.t_values:
                raise ValueError("semigroup requires --t with a comma-separated list of times")
            if any(not t > 0 for t in self.t_values):
                raise ValueError(f"semigroup times must be positive, got {self.t_values}")
        return self

    def oscillator_params(self) -> OscillatorParams:
        return OscillatorParams(k=self.k, theta=self.theta)

    def discretization(self) -> DiscretizationConfig:
        return DiscretizationConfig(self.basis_size, self.n_max, self.scale)

    def grid_spec(self) -> Optional[GridSpec]:
        return GridSpec.parse(self.grid) if self.grid else None
