"""
Resolvent-norm grids over complex rectangles, disk inclusion checks near eigenvalues
and decay profiles along rays.
"""

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from ..asymptotics.params import OscillatorParams
from ..optimization.parallel import ordered_map
from ..optimization.spectrum_cache import get_spectrum
from ..spectral.galerkin import DiscretizationConfig
from ..utils.exceptions import ConfigurationError, PreconditionError
from .resolvent import SVD_MAX_SIZE, SchurResolvent, resolvent_norm, spectral_norm

logger = logging.getLogger(__name__)

MAX_GRID_NODES = 1_000_000
TRUSTED_FRACTION = 0.8


@dataclass(frozen=True)
class GridSpec:
    """Rectangle [re_min, re_max] x [im_min, im_max] sampled on nx by ny nodes."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float
    nx: int
    ny: int

    def __post_init__(self):
        if not self.re_min < self.re_max:
            raise ConfigurationError(f"re_min must be < re_max, got {self.re_min}..{self.re_max}")
        if not self.im_min < self.im_max:
            raise ConfigurationError(f"im_min must be < im_max, got {self.im_min}..{self.im_max}")
        if self.nx < 1 or self.ny < 1:
            raise ConfigurationError(f"Grid resolution must be positive, got {self.nx}x{self.ny}")
        if self.nx * self.ny > MAX_GRID_NODES:
            raise ConfigurationError(
                f"Grid of {self.nx}x{self.ny} nodes exceeds the budget of {MAX_GRID_NODES}",
                details={"nx": self.nx, "ny": self.ny},
            )

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        """Parse 're0,re1,im0,im1,nx,ny'."""
        parts = [part.strip() for part in text.split(",")]
        if len(parts) != 6:
            raise ConfigurationError(
                f"Grid must be 're0,re1,im0,im1,nx,ny', got {text!r}", details={"grid": text}
            )
        try:
            re0, re1, im0, im1 = (float(part) for part in parts[:4])
            nx, ny = int(parts[4]), int(parts[5])
        except ValueError as e:
            raise ConfigurationError(f"Cannot parse grid {text!r}: {e}") from e
        return cls(re0, re1, im0, im1, nx, ny)

    @property
    def re_values(self) -> np.ndarray:
        return np.linspace(self.re_min, self.re_max, self.nx)

    @property
    def im_values(self) -> np.ndarray:
        return np.linspace(self.im_min, self.im_max, self.ny)

    def mirrored(self) -> "GridSpec":
        """Spec of the complex-conjugate rectangle."""
        return GridSpec(self.re_min, self.re_max, -self.im_max, -self.im_min, self.nx, self.ny)


@dataclass(frozen=True, eq=False)
class ResolventGrid:
    """Resolvent norms on a GridSpec; values[i, j] is at re_values[j] + i im_values[i]."""

    spec: GridSpec
    values: np.ndarray = field(repr=False)
    params: OscillatorParams
    config: DiscretizationConfig
    metadata: Dict[str, Any] = field(default_factory=dict)

    def to_frame(self) -> pd.DataFrame:
        """Row-major table with columns re, im, resolvent_norm."""
        re, im = np.meshgrid(self.spec.re_values, self.spec.im_values)
        return pd.DataFrame(
            {
                "re": re.ravel(),
                "im": im.ravel(),
                "resolvent_norm": self.values.ravel(),
            }
        )

    def to_payload(self) -> Dict[str, Any]:
        return {
            "params": asdict(self.params),
            "discretization": asdict(self.config),
            "spec": asdict(self.spec),
            "values": [float(v) for v in self.values.ravel()],
            "grid_metadata": dict(self.metadata),
        }


def _svd_row(matrix: np.ndarray, norm: float, zs: np.ndarray) -> np.ndarray:
    return np.array([resolvent_norm(matrix, z, norm) for z in zs])


def _schur_row(schur: SchurResolvent, zs: np.ndarray) -> np.ndarray:
    values = np.empty(zs.size)
    seed = None
    for position, z in enumerate(zs):
        values[position], seed = schur.resolvent_norm(z, seed)
    return values


def grid(
    params: OscillatorParams,
    config: DiscretizationConfig,
    spec: GridSpec,
    max_workers: Optional[int] = None,
) -> ResolventGrid:
    """
    Resolvent norms of the Galerkin matrix at every node of spec.

    Rows are independent and evaluated through ordered_map; output is deterministic.
    Nodes beyond 0.8 |lambda_{n_max}| are flagged in metadata.
    """
    spectrum = get_spectrum(params, config)
    matrix = spectrum.matrix
    norm = spectral_norm(matrix)
    size = matrix.shape[0]
    re_values = spec.re_values
    rows = [re_values + 1j * im for im in spec.im_values]

    if size <= SVD_MAX_SIZE:
        method = "svd"
        values = ordered_map(lambda zs: _svd_row(matrix, norm, zs), rows, max_workers)
    else:
        method = "schur-inverse-iteration"
        schur = SchurResolvent.from_matrix(matrix, norm)
        values = ordered_map(lambda zs: _schur_row(schur, zs), rows, max_workers)

    trusted_radius = TRUSTED_FRACTION * spectrum.pairs[-1].modulus
    outside = int(sum(np.count_nonzero(np.abs(zs) > trusted_radius) for zs in rows))
    if outside:
        logger.warning(
            f"{outside} grid node(s) lie beyond the trusted radius {trusted_radius:.6g}; "
            "Galerkin pseudospectra are unreliable there"
        )
    metadata = {
        "method": method,
        "matrix_norm": norm,
        "trusted_radius": trusted_radius,
        "nodes_outside_trusted_radius": outside,
        "truncation_warning": bool(outside),
    }
    logger.info(f"Resolvent grid {spec.nx}x{spec.ny} computed with {method}")
    return ResolventGrid(spec, np.vstack(values), params, spectrum.config, metadata)


def _spectral_gap(eigenvalues: np.ndarray, position: int) -> float:
    others = np.delete(eigenvalues, position)
    if others.size == 0:
        return math.inf
    return float(np.min(np.abs(others - eigenvalues[position])))


def disk_inclusion_check(
    params: OscillatorParams,
    config: DiscretizationConfig,
    n: int,
    deltas: Sequence[float],
) -> List[Tuple[float, float]]:
    """
    Ratios ||R(z)|| delta / kappa_n at z = lambda_n + delta e^{i(arg lambda_n + pi/2)}.

    The offset is perpendicular to the half-line holding the spectrum. Ratios tend to 1
    as delta -> 0.

    Raises:
        PreconditionError: If n is outside 1..n_max or some delta exceeds half the gap
    """
    spectrum = get_spectrum(params, config)
    pair = spectrum.pair(n)
    gap = _spectral_gap(spectrum.eigenvalues, n - 1)
    matrix = spectrum.matrix
    norm = spectral_norm(matrix)
    direction = 1j * pair.eigenvalue / abs(pair.eigenvalue)

    results = []
    for delta in deltas:
        if not 0 < delta <= 0.5 * gap:
            raise PreconditionError(
                f"delta={delta} must lie in (0, gap/2] with gap {gap:.6g} at lambda_{n}",
                details={"n": n, "delta": delta, "gap": gap},
            )
        z = pair.eigenvalue + delta * direction
        ratio = resolvent_norm(matrix, z, norm) * delta / pair.kappa
        results.append((float(delta), float(ratio)))
        logger.debug(f"disk inclusion n={n} delta={delta:.3e}: ratio {ratio:.8f}")
    return results


def resolvent_decay_profile(
    params: OscillatorParams,
    config: DiscretizationConfig,
    angle: float,
    radii: Sequence[float],
) -> List[Tuple[float, float]]:
    """(r, ||R(r e^{i angle})||) along a ray; outside the numerical range it decays like C/r."""
    spectrum = get_spectrum(params, config)
    matrix = spectrum.matrix
    norm = spectral_norm(matrix)
    direction = complex(math.cos(angle), math.sin(angle))
    return [(float(r), resolvent_norm(matrix, r * direction, norm)) for r in radii]
