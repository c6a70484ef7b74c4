"""
Hydra configuration structures for spectral-instability.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from hydra import compose, initialize
from hydra.core.config_store import ConfigStore
from hydra.core.global_hydra import GlobalHydra
from omegaconf import MISSING, OmegaConf
from omegaconf.errors import OmegaConfBaseException

from ..specfun.quadrature import QuadratureConfig
from ..spectral.galerkin import DiscretizationConfig
from ..utils.exceptions import ConfigurationError

ROOT_CONFIG_NAME = "spectral_instability"


@dataclass
class DiscretizationPreset:
    """Galerkin discretization preset."""

    basis_size: int = 200
    n_max: int = 20
    # None selects the Weyl-balanced dilation at solve time
    scale: Optional[float] = None

    def to_config(self) -> DiscretizationConfig:
        return DiscretizationConfig(self.basis_size, self.n_max, self.scale)


@dataclass
class QuadraturePreset:
    """Adaptive Gauss-Legendre settings used for phase integrals."""

    abs_tol: float = 1e-13
    rel_tol: float = 1e-12
    max_subdivisions: int = 500
    rule_order: int = 15

    def to_config(self) -> QuadratureConfig:
        return QuadratureConfig(self.abs_tol, self.rel_tol, self.max_subdivisions, self.rule_order)


@dataclass
class OutputPreset:
    """Artifact output defaults."""

    output_dir: str = "results"
    format: str = "json"
    log_level: str = "WARNING"
    log_format: str = "simple"


@dataclass
class SpectralInstabilityConfig:
    """Root configuration."""

    defaults: List[Any] = field(default_factory=lambda: [{"discretization": "default"}, "_self_"])

    discretization: DiscretizationPreset = MISSING
    quadrature: QuadraturePreset = field(default_factory=QuadraturePreset)
    output: OutputPreset = field(default_factory=OutputPreset)


@dataclass
class RunFileConfig:
    """Schema of an optional YAML run file; present values override CLI flags."""

    command: Optional[str] = None
    k: Optional[int] = None
    theta: Optional[float] = None
    basis_size: Optional[int] = None
    n_max: Optional[int] = None
    scale: Optional[float] = None
    grid: Optional[str] = None
    t: Optional[List[float]] = None
    out: Optional[str] = None
    format: Optional[str] = None
    preset: Optional[str] = None


COARSE = DiscretizationPreset(basis_size=120, n_max=15)
DEFAULT = DiscretizationPreset(basis_size=200, n_max=20)
FINE = DiscretizationPreset(basis_size=400, n_max=40)

PRESETS = {"coarse": COARSE, "default": DEFAULT, "fine": FINE}


def register_configs():
    """Register all configurations with Hydra ConfigStore."""
    cs = ConfigStore.instance()

    cs.store(name=ROOT_CONFIG_NAME, node=SpectralInstabilityConfig)

    for name, preset in PRESETS.items():
        cs.store(group="discretization", name=name, node=preset)


def compose_config(overrides: Optional[List[str]] = None):
    """
    Compose the root config with Hydra overrides such as ``discretization=fine``.

    Raises:
        ConfigurationError: If an override names an unknown preset or key
    """
    register_configs()
    if GlobalHydra.instance().is_initialized():
        GlobalHydra.instance().clear()
    try:
        with initialize(version_base=None, config_path=None):
            return compose(config_name=ROOT_CONFIG_NAME, overrides=list(overrides or []))
    except Exception as e:
        raise ConfigurationError(
            f"Cannot compose configuration with overrides {overrides}: {e}",
            details={"overrides": list(overrides or [])},
        ) from e


def load_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    """
    Read a YAML run file and validate it against RunFileConfig.

    Returns:
        Mapping of the keys set in the file (unset keys omitted)
    """
    path = Path(path)
    if not path.exists():
        raise ConfigurationError(f"Config file not found: {path}", details={"path": str(path)})
    try:
        schema = OmegaConf.structured(RunFileConfig)
        merged = OmegaConf.merge(schema, OmegaConf.load(path))
    except OmegaConfBaseException as e:
        raise ConfigurationError(f"Invalid config file {path}: {e}") from e
    values = OmegaConf.to_container(merged, resolve=True)
    return {key: value for key, value in values.items() if value is not None}
