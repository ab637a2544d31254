"""Compiled and pure-Python kernels must agree exactly."""
import numpy as np
import pytest

from localcoloring import kernels
from localcoloring.graph import gen_graph
from localcoloring.vertex import _cv_step_big, _nbr_order, sequential_greedy

BACKENDS = kernels.backends()
GRAPHS = [
    gen_graph("cycle", n=17),
    gen_graph("petersen"),
    gen_graph("grid", w=6, h=5, wrap=True),
    gen_graph("random_regular", n=60, d=3, seed=4),
    gen_graph("truncated_regular_tree", delta=3, depth=3),
    gen_graph("empty", n=4),
]


def both(name, *args):
    outs = [getattr(mod, name)(*args) for mod in BACKENDS.values()]
    return outs


def _eq(a, b):
    if isinstance(a, tuple):
        return all(_eq(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        return np.array_equal(np.asarray(a), np.asarray(b))
    return a == b


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")
    assert "python" in BACKENDS


@pytest.mark.parametrize("g", GRAPHS, ids=lambda g: repr(g))
def test_parity(g):
    if len(BACKENDS) < 2:
        pytest.skip("compiled extension not built")
    for src in range(min(g.n, 5)):
        for depth in (-1, 0, 1, 3):
            a, b = both("bfs_layers", g.indptr, g.indices, src, depth)
            assert _eq(a, b)
        a, b = both("bfs_full_order", g.indptr, g.indices, src)
        assert _eq(a, b)
    for k in (1, 2, 3):
        a, b = both("power_csr", g.indptr, g.indices, k)
        assert _eq(a, b)
    a, b = both("girth", g.indptr, g.indices)
    assert a == b
    tab = np.array([2, 4, 7, 9, 30], dtype=np.int64)
    a, b = both("growth_violation", g.indptr, g.indices, tab)
    assert tuple(a) == tuple(b)
    order = np.random.default_rng(0).permutation(g.n).astype(np.int64)
    cols = np.zeros(g.n, dtype=np.int64)
    a, b = both("greedy_sweep", g.indptr, g.indices, order, cols, g.max_degree + 1)
    assert _eq(a, b)


@pytest.mark.parametrize("g", GRAPHS[:5], ids=lambda g: repr(g))
def test_cv_step_parity_and_big_int_path(g):
    rng = np.random.default_rng(1)
    ids = rng.permutation(g.n * 10)[:g.n].tolist()
    nbr = _nbr_order(g, ids)
    cols = np.asarray([i + 1 for i in ids], dtype=np.int64)
    L = int(g.n * 10).bit_length()
    results = [mod.cv_step(g.indptr, nbr, cols, L, g.max_degree) for mod in BACKENDS.values()]
    for out, status in results:
        assert status == 0
        assert np.array_equal(out, results[0][0])
    big = _cv_step_big(g, nbr, cols.tolist(), L, g.max_degree)
    assert big == results[0][0].tolist()


def test_cv_step_status_codes():
    g = gen_graph("cycle", n=4)
    for mod in BACKENDS.values():
        _, status = mod.cv_step(g.indptr, g.indices, np.array([1, 1, 2, 3], dtype=np.int64), 3, 2)
        assert status == 1
        _, status = mod.cv_step(g.indptr, g.indices, np.array([1, 2, 3, 4], dtype=np.int64), 3, 1)
        assert status == 2


def test_greedy_sweep_matches_sequential():
    g = gen_graph("random_regular", n=40, d=4, seed=9)
    order = np.arange(g.n, dtype=np.int64)
    for mod in BACKENDS.values():
        out, bad = mod.greedy_sweep(g.indptr, g.indices, order, np.zeros(g.n, dtype=np.int64),
                                    g.max_degree + 1)
        assert bad == -1
        assert np.array_equal(out, sequential_greedy(g, order))
