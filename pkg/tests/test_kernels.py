import numpy as np
import pytest

from tsubdiv import _pykernels, kernels, random_tournament

compiled = pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled extension not built")


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")


def _words(T):
    out_w, in_w = T.words
    return np.ascontiguousarray(out_w[:, 0]), np.ascontiguousarray(in_w[:, 0])


@compiled
def test_directed_counts_agree():
    T = random_tournament(150, 4)
    out_w, in_w = T.words
    us = np.arange(0, 150, 7, dtype=np.int64)
    vs = np.arange(150, dtype=np.int64)
    mask = np.full(out_w.shape[1], np.uint64(0x5555555555555555))
    a = kernels.backend.directed_counts(out_w, in_w, us, vs, mask)
    b = _pykernels.directed_counts(out_w, in_w, us, vs, mask)
    assert np.array_equal(a, b)


def _norm(result):
    status, base, conn, tuples = result
    return status, list(base), list(conn), tuples


@compiled
@pytest.mark.parametrize("n, k", [(6, 3), (9, 3), (12, 4), (20, 4), (40, 5), (64, 5)])
def test_search_agrees(n, k):
    for s in range(8):
        T = random_tournament(n, s)
        o, i = _words(T)
        fast = kernels.backend.find_subdivision_small(o, i, n, k, -1, 0.0)
        slow = _pykernels.find_subdivision_small(o, i, n, k, -1, 0.0)
        assert _norm(fast) == _norm(slow)


@compiled
@pytest.mark.parametrize("n, k, lo, hi", [(5, 2, 0, 1024), (6, 3, 0, 4000), (6, 3, 20000, 32768)])
def test_sweep_agrees(n, k, lo, hi):
    for early in (True, False):
        assert (kernels.backend.sweep_small(n, k, lo, hi, early, -1, 0.0)
                == _pykernels.sweep_small(n, k, lo, hi, early, -1, 0.0))


@compiled
def test_budget_agrees():
    for cap in (1, 17, 300):
        assert (kernels.backend.sweep_small(6, 3, 0, 2000, False, cap, 0.0)
                == _pykernels.sweep_small(6, 3, 0, 2000, False, cap, 0.0))


def test_decode_pattern_roundtrip():
    outs, ins = _pykernels.decode_pattern(4, 0b101101)
    for u in range(4):
        for v in range(4):
            assert bool(outs[u] >> v & 1) == bool(ins[v] >> u & 1)
