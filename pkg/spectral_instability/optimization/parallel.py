"""
Order-preserving thread map for independent grid rows and time values.
"""

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from ..utils.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

THREADS_ENV_VAR = "SPECTRAL_INSTABILITY_THREADS"

T = TypeVar("T")
R = TypeVar("R")


def worker_count(max_workers: Optional[int] = None) -> int:
    """
    Number of worker threads: explicit value, else SPECTRAL_INSTABILITY_THREADS, else 1.

    Raises:
        ConfigurationError: If the environment value is not a positive integer
    """
    if max_workers is not None:
        return max(1, int(max_workers))
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None or raw.strip() == "":
        return 1
    try:
        value = int(raw)
    except ValueError as e:
        raise ConfigurationError(
            f"{THREADS_ENV_VAR} must be a positive integer, got {raw!r}"
        ) from e
    if value < 1:
        raise ConfigurationError(f"{THREADS_ENV_VAR} must be a positive integer, got {raw!r}")
    return value


def ordered_map(
    fn: Callable[[T], R], items: Iterable[T], max_workers: Optional[int] = None
) -> List[R]:
    """
    Apply fn to every item, possibly concurrently, returning results in input order.

    The first exception raised by fn propagates after all submitted work finishes.
    """
    items = list(items)
    workers = min(worker_count(max_workers), max(len(items), 1))
    if workers == 1:
        return [fn(item) for item in items]

    logger.debug(f"ordered_map: {len(items)} items on {workers} threads")
    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = [executor.submit(fn, item) for item in items]
        return [future.result() for future in futures]
