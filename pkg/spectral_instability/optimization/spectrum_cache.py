"""
Spectrum caching so one Galerkin eigensolve serves every consumer of a run.
"""

import logging
import threading
import time
from typing import Dict, Optional, Tuple

from ..asymptotics.params import OscillatorParams
from ..spectral.galerkin import DiscretizationConfig
from ..spectral.solver import SpectrumResult, solve_spectrum

logger = logging.getLogger(__name__)

CacheKey = Tuple[OscillatorParams, DiscretizationConfig]


class SpectrumCache:
    """
    Singleton cache of SpectrumResult keyed by (params, resolved discretization).
    """

    _instance = None
    _lock = threading.Lock()

    def __new__(cls):
        if cls._instance is None:
            with cls._lock:
                if cls._instance is None:
                    cls._instance = super().__new__(cls)
                    cls._instance._initialized = False
        return cls._instance

    def __init__(self):
        if not self._initialized:
            self._spectra: Dict[CacheKey, SpectrumResult] = {}
            self._solve_times: Dict[CacheKey, float] = {}
            self._access_counts: Dict[CacheKey, int] = {}
            self._max_entries = 8
            self._entry_lock = threading.Lock()
            self._solving: Dict[CacheKey, threading.Lock] = {}
            self._initialized = True
            logger.debug("SpectrumCache initialized")

    def get_spectrum(
        self, params: OscillatorParams, config: DiscretizationConfig
    ) -> SpectrumResult:
        """
        Get a cached spectrum or solve and cache it.

        The solve runs outside the shared lock; concurrent callers for the same key wait on
        that key's lock and reuse the single result.

        Args:
            params: Oscillator parameters
            config: Discretization (scale=None is resolved before lookup)

        Returns:
            SpectrumResult shared between callers
        """
        key = (params, config.resolved(params.k))

        with self._entry_lock:
            cached = self._lookup(key)
            if cached is not None:
                return cached
            key_lock = self._solving.setdefault(key, threading.Lock())

        with key_lock:
            with self._entry_lock:
                cached = self._lookup(key)
                if cached is not None:
                    return cached

            try:
                start_time = time.perf_counter()
                spectrum = solve_spectrum(*key)
                solve_time = time.perf_counter() - start_time

                with self._entry_lock:
                    if len(self._spectra) >= self._max_entries:
                        self._evict_least_used()
                    self._spectra[key] = spectrum
                    self._solve_times[key] = solve_time
                    self._access_counts[key] = 1
            finally:
                with self._entry_lock:
                    self._solving.pop(key, None)

        logger.info(
            f"Spectrum solved and cached: k={params.k} theta={params.theta} ({solve_time:.2f}s)"
        )
        return spectrum

    def _lookup(self, key: CacheKey) -> Optional[SpectrumResult]:
        """Cached entry for key with its access counted; caller holds _entry_lock."""
        spectrum = self._spectra.get(key)
        if spectrum is not None:
            self._access_counts[key] += 1
            logger.debug(
                f"Using cached spectrum k={key[0].k} theta={key[0].theta} "
                f"(accessed {self._access_counts[key]} times)"
            )
        return spectrum

    def _evict_least_used(self):
        if not self._spectra:
            return
        victim = min(self._access_counts, key=self._access_counts.get)
        logger.debug(f"Evicting cached spectrum: {victim}")
        self._spectra.pop(victim, None)
        self._solve_times.pop(victim, None)
        self._access_counts.pop(victim, None)

    def clear(self):
        """Clear all cached spectra."""
        with self._entry_lock:
            self._spectra.clear()
            self._solve_times.clear()
            self._access_counts.clear()

    def get_stats(self) -> Dict:
        """Get cache statistics."""
        with self._entry_lock:
            access_counts = dict(self._access_counts)
            solve_times = list(self._solve_times.values())
            cached = len(self._spectra)
        average_solve_time = sum(solve_times) / len(solve_times) if solve_times else 0.0
        return {
            "cached_spectra": cached,
            "total_accesses": sum(access_counts.values()),
            "average_solve_time": average_solve_time,
            "access_counts": {
                f"k={p.k},theta={p.theta},N={c.basis_size}": count
                for (p, c), count in access_counts.items()
            },
        }


# Global cache instance
spectrum_cache = SpectrumCache()


def get_spectrum(
    params: OscillatorParams, config: Optional[DiscretizationConfig] = None
) -> SpectrumResult:
    """Convenience function to get a cached spectrum."""
    return spectrum_cache.get_spectrum(params, config or DiscretizationConfig())


def clear_cache():
    """Clear the spectrum cache."""
    spectrum_cache.clear()


def get_cache_stats() -> Dict:
    """Get spectrum cache statistics."""
    return spectrum_cache.get_stats()
