"""
Tests for the cache and the spectral-norm memoization built on it.
"""

import numpy as np
import pytest

from src.linalg.design import SparseDesign
from src.problems.elastic_net import gram_spectral_norm
from src.utils.cache import Cache, cached, get_spectral_cache


@pytest.fixture
def small_design():
    dense = np.array([[1.0, 0.0, 2.0], [0.0, 3.0, 0.0]])
    return SparseDesign(A=dense, b=np.array([1.0, -1.0]))


class TestCache:
    """Test basic cache functionality."""

    def test_set_get_and_miss(self):
        """Stored values come back; unknown keys miss."""
        cache = Cache(max_size=10)
        cache.set("lam:abc", 4.5)
        assert cache.get("lam:abc") == 4.5
        assert cache.get("lam:missing") is None

    def test_lru_eviction(self):
        """Oldest untouched key goes first."""
        cache = Cache(max_size=2)
        cache.set("a", 1.0)
        cache.set("b", 2.0)
        cache.get("a")
        cache.set("c", 3.0)

        assert cache.get("a") == 1.0
        assert cache.get("b") is None
        assert cache.get_stats().evictions == 1

    def test_overwrite_does_not_evict(self):
        """Re-setting an existing key keeps the size unchanged."""
        cache = Cache(max_size=2)
        cache.set("a", 1.0)
        cache.set("b", 2.0)
        cache.set("a", 5.0)

        assert cache.get("a") == 5.0
        assert cache.get("b") == 2.0
        assert cache.get_stats().evictions == 0

    def test_stats(self):
        """Hits and misses are counted."""
        cache = Cache(max_size=10)
        cache.set("k", 1.0)
        cache.get("k")
        cache.get("other")

        stats = cache.get_stats()
        assert stats.hits == 1
        assert stats.misses == 1
        assert stats.hit_rate == pytest.approx(0.5)

    def test_clear(self):
        """Clearing empties the cache."""
        cache = Cache(max_size=10)
        cache.set("k", 1.0)
        cache.clear()
        assert cache.get_stats().size == 0
        assert cache.get("k") is None

    def test_rejects_empty_capacity(self):
        """A cache must hold at least one entry."""
        with pytest.raises(ValueError):
            Cache(max_size=0)


class TestCachedDecorator:
    """Test cached decorator."""

    def test_custom_key_reuses_result(self):
        """Calls with the same key compute once."""
        cache = Cache(max_size=10)
        calls = []

        @cached(cache, key_func=lambda design_id: design_id)
        def expensive(design_id):
            calls.append(design_id)
            return 2.0

        assert expensive("d1") == 2.0
        assert expensive("d1") == 2.0
        assert expensive("d2") == 2.0
        assert calls == ["d1", "d2"]

    def test_none_results_are_recomputed(self):
        """None is never treated as a cached value."""
        cache = Cache(max_size=10)
        calls = []

        @cached(cache, key_func=lambda: "const")
        def nothing():
            calls.append(1)
            return None

        nothing()
        nothing()
        assert len(calls) == 2


class TestSpectralCache:
    """λ_max(AᵀA) is memoized per design fingerprint."""

    def test_spectral_norm_is_cached(self, small_design):
        """The second call is served from the cache."""
        get_spectral_cache().clear()
        first = gram_spectral_norm(small_design)
        hits_before = get_spectral_cache().get_stats().hits
        second = gram_spectral_norm(small_design)

        assert first == second
        assert get_spectral_cache().get_stats().hits == hits_before + 1

    def test_spectral_norm_value(self, small_design):
        """AᵀA has eigenvalues {9, 5, 0}."""
        get_spectral_cache().clear()
        assert gram_spectral_norm(small_design) == pytest.approx(9.0, rel=1e-10)

    def test_distinct_designs_distinct_keys(self, small_design):
        """Different contents never share an entry."""
        other = SparseDesign(A=np.array([[2.0, 0.0, 0.0], [0.0, 1.0, 0.0]]), b=np.array([1.0, 1.0]))
        get_spectral_cache().clear()

        assert small_design.fingerprint != other.fingerprint
        assert gram_spectral_norm(other) == pytest.approx(4.0, rel=1e-10)
        assert gram_spectral_norm(small_design) == pytest.approx(9.0, rel=1e-10)

    def test_equal_content_shares_entry(self, small_design):
        """A rebuilt design with identical data hits the cached value."""
        twin = SparseDesign(A=np.array([[1.0, 0.0, 2.0], [0.0, 3.0, 0.0]]), b=np.array([1.0, -1.0]))
        get_spectral_cache().clear()
        gram_spectral_norm(small_design)
        gram_spectral_norm(twin)
        assert get_spectral_cache().get_stats().size == 1
