"""
Spectrum caching and thread-level parallelism.
"""

from .parallel import THREADS_ENV_VAR, ordered_map, worker_count
from .spectrum_cache import (
    SpectrumCache,
    clear_cache,
    get_cache_stats,
    get_spectrum,
    spectrum_cache,
)

__all__ = [
    "THREADS_ENV_VAR",
    "SpectrumCache",
    "clear_cache",
    "get_cache_stats",
    "get_spectrum",
    "ordered_map",
    "spectrum_cache",
    "worker_count",
]
