"""
Configuration management for spectral-instability using Hydra.
"""

from .config import (
    PRESETS,
    DiscretizationPreset,
    OutputPreset,
    QuadraturePreset,
    RunFileConfig,
    SpectralInstabilityConfig,
    compose_config,
    load_config_file,
    register_configs,
)

__all__ = [
    "PRESETS",
    "DiscretizationPreset",
    "OutputPreset",
    "QuadraturePreset",
    "RunFileConfig",
    "SpectralInstabilityConfig",
    "compose_config",
    "load_config_file",
    "register_configs",
]
