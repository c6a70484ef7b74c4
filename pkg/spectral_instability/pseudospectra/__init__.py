"""
Resolvent norms, pseudospectral grids and disk inclusion checks.
"""

from .grid import (
    GridSpec,
    ResolventGrid,
    disk_inclusion_check,
    grid,
    resolvent_decay_profile,
)
from .resolvent import SchurResolvent, resolvent_norm, spectral_norm

__all__ = [
    "GridSpec",
    "ResolventGrid",
    "SchurResolvent",
    "disk_inclusion_check",
    "grid",
    "resolvent_decay_profile",
    "resolvent_norm",
    "spectral_norm",
]
