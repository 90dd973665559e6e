"""
Thread-safe LRU cache for per-design spectral quantities.

Entries are keyed by "<quantity>:<design fingerprint>". A design's content
never changes after construction, so entries never expire; they leave the
cache only through LRU eviction or `clear`.
"""

import functools
from collections import OrderedDict
from dataclasses import dataclass
from threading import Lock
from typing import Any, Callable, Optional

from src.utils.logger import get_logger

logger = get_logger(__name__)


@dataclass
class CacheStats:
    hits: int = 0
    misses: int = 0
    evictions: int = 0
    size: int = 0

    @property
    def hit_rate(self) -> float:
        total = self.hits + self.misses
        return self.hits / total if total > 0 else 0.0

    def __str__(self) -> str:
        return (f"CacheStats(hits={self.hits}, misses={self.misses}, "
                f"hit_rate={self.hit_rate:.2%}, size={self.size})")


class Cache:
    """
    In-memory LRU cache shared by experiment cells running on a thread pool.
    """

    def __init__(self, max_size: int = 64):
        if max_size < 1:
            raise ValueError(f"max_size must be >= 1, got {max_size}")
        self.max_size = max_size
        self._entries: "OrderedDict[str, Any]" = OrderedDict()
        self._lock = Lock()
        self._stats = CacheStats()
        logger.debug(f"Initialized cache: max_size={max_size}")

    def get(self, key: str) -> Optional[Any]:
        """Value for key, or None on a miss."""
        with self._lock:
            if key not in self._entries:
                self._stats.misses += 1
                return None
            self._entries.move_to_end(key)
            self._stats.hits += 1
            return self._entries[key]

    def set(self, key: str, value: Any) -> None:
        with self._lock:
            self._entries[key] = value
            self._entries.move_to_end(key)
            if len(self._entries) > self.max_size:
                evicted_key, _ = self._entries.popitem(last=False)
                self._stats.evictions += 1
                logger.info(f"Cache evicted key (LRU): {evicted_key}")
            self._stats.size = len(self._entries)

    def clear(self) -> None:
        with self._lock:
            count = len(self._entries)
            self._entries.clear()
            self._stats.size = 0
        logger.debug(f"Cache cleared: {count} items removed")

    def get_stats(self) -> CacheStats:
        with self._lock:
            return CacheStats(
                hits=self._stats.hits,
                misses=self._stats.misses,
                evictions=self._stats.evictions,
                size=self._stats.size,
            )


_spectral_cache = Cache(max_size=64)


def get_spectral_cache() -> Cache:
    """Get the cache holding λ_max(AᵀA) per design fingerprint."""
    return _spectral_cache


def cached(cache: Cache, key_func: Callable[..., str]):
    """
    Memoize a per-design quantity under "<function name>:<key_func(...)>".

    Example:
        @cached(get_spectral_cache(), key_func=lambda design: design.fingerprint)
        def gram_spectral_norm(design):
            ...
    """
    def decorator(func: Callable) -> Callable:
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            cache_key = f"{func.__name__}:{key_func(*args, **kwargs)}"
            value = cache.get(cache_key)
            if value is not None:
                logger.debug(f"Using cached {func.__name__} for {cache_key}")
                return value

            value = func(*args, **kwargs)
            cache.set(cache_key, value)
            return value

        wrapper.cache = cache
        wrapper.cache_clear = cache.clear
        return wrapper
    return decorator
