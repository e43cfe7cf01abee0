import numpy as np
import pytest

from ghw._kernels import (
    HAS_NUMBA,
    MAX_KERNEL_DIM,
    active_backend,
    canonicalize_batch,
    census_leaves,
)
from ghw._kernels.common import python_census_leaves

needs_numba = pytest.mark.skipif(not HAS_NUMBA, reason="numba unavailable")

CELLS = [(n, k) for n in range(2, MAX_KERNEL_DIM + 1)
         for k in range(1, n + 1, 2)]


@needs_numba
@pytest.mark.parametrize("n,k", CELLS)
def test_backends_agree(n, k):
    a = census_leaves(n, k, backend="numba")
    b = census_leaves(n, k, backend="numpy")
    assert np.array_equal(a, b)


@pytest.mark.parametrize("n,k", [(n, k) for n, k in CELLS if n <= 4])
def test_numpy_matches_bigint_reference(n, k):
    fast = census_leaves(n, k, backend="numpy")
    slow = python_census_leaves(n, k)
    assert [tuple(row) for row in fast.tolist()] == slow


@pytest.mark.parametrize("n,k", [(n, k) for n, k in CELLS if n <= 5])
def test_canonicalize_fixes_leaves(n, k):
    leaves = census_leaves(n, k, backend="numpy")
    again = canonicalize_batch(n, k, leaves)
    assert np.array_equal(np.unique(again, axis=0), leaves)


def test_leaves_sorted_unique():
    a = census_leaves(4, 1, backend="numpy")
    rows = [tuple(r) for r in a.tolist()]
    assert rows == sorted(set(rows))


def test_dimension_guard():
    with pytest.raises(ValueError):
        census_leaves(MAX_KERNEL_DIM + 1, 1)
    with pytest.raises(ValueError):
        canonicalize_batch(1, 1, np.zeros((0, 1), dtype=np.int64))


class TestBackendSelection:
    def test_env_numpy(self, monkeypatch):
        monkeypatch.setenv("GHW_BACKEND", "numpy")
        assert active_backend() == "numpy"

    @needs_numba
    def test_env_numba(self, monkeypatch):
        monkeypatch.setenv("GHW_BACKEND", "numba")
        assert active_backend() == "numba"

    def test_env_rejects_unknown(self, monkeypatch):
        monkeypatch.setenv("GHW_BACKEND", "fortran")
        with pytest.raises(ValueError):
            active_backend()

    def test_default_is_available_backend(self, monkeypatch):
        monkeypatch.delenv("GHW_BACKEND", raising=False)
        assert active_backend() == ("numba" if HAS_NUMBA else "numpy")
