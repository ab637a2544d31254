import numpy as np
import pytest

from localcoloring.errors import ImproperInput
from localcoloring.graph import Graph, gen_graph
from localcoloring.localsim import assign_ids, run_deterministic, verify_coloring
from localcoloring.vertex import (cv_bound, cv_fixed_point_chain, cv_step, distributed_greedy,
                                  greedy_finish, greedy_pipeline, log_star, reduce_to_constant,
                                  schedule, sequential_greedy)


@pytest.mark.parametrize("n,want", [(1, 0), (2, 0), (3, 1), (4, 1), (16, 2), (17, 3),
                                    (65536, 3), (65537, 4)])
def test_log_star(n, want):
    assert log_star(n) == want


def test_cv_bound_chain_values():
    assert cv_bound(2 ** 65536, 2) == 17179869184
    assert cv_bound(17179869184, 2) == 4624
    assert cv_bound(4624, 2) == 676
    assert cv_bound(676, 2) == 400
    assert cv_fixed_point_chain(2 ** 65536, 2) == [2 ** 65536, 17179869184, 4624, 676, 400, 324]


def test_cv_step_on_c12():
    g = gen_graph("cycle", n=12)
    cols = np.array([1, 2, 3, 4, 5, 6, 7, 8, 1, 2, 3, 4])
    out, k = cv_step(g, cols, 8, 2)
    assert k == 36
    assert verify_coloring(g, out.tolist(), "vertex", 36).passed


def test_cv_step_isolated_and_edge():
    out, _ = cv_step(Graph(1, []), [5], 8, 2)
    assert list(out) == [1]
    out, _ = cv_step(Graph(2, [(0, 1)]), [1, 2], 2, 1)
    assert out[0] != out[1]


def test_cv_step_rejects_improper():
    with pytest.raises(ImproperInput):
        cv_step(gen_graph("cycle", n=4), [1, 1, 2, 3], 4, 2)


def test_reduce_big_start():
    g = gen_graph("cycle", n=60)
    ids = assign_ids(g, "random", c=3, seed=0)
    big = [2 ** 65000 + i for i in ids.ids]
    out, k, it = reduce_to_constant(g, big, 2 ** 65536, 2, ids=ids.ids)
    assert (k, it) == (324, 5)
    assert verify_coloring(g, list(out), "vertex", 324).passed


def test_reduce_at_fixed_point():
    g = gen_graph("cycle", n=6)
    out, k, it = reduce_to_constant(g, np.array([1, 2, 1, 2, 1, 2]), 324, 2)
    assert it == 0 and k == 324


def test_reduce_ids_c1():
    g = gen_graph("cycle", n=1000)
    ids = assign_ids(g, "random", c=1, seed=5)
    out, k, it = reduce_to_constant(g, np.asarray(ids.ids) + 1, 1000, 2, ids=ids.ids)
    assert verify_coloring(g, out.tolist(), "vertex", k).passed
    assert it <= log_star(1000) + 4


def test_greedy_finish():
    g = gen_graph("cycle", n=6)
    out, C = greedy_finish(g, np.array([1, 7, 13, 19, 25, 31]), 36)
    assert C == 36 and verify_coloring(g, out.tolist(), "vertex", 3).passed
    K = gen_graph("complete", n=5)
    out, _ = greedy_finish(K, np.arange(1, 6), 5)
    assert sorted(out.tolist()) == [1, 2, 3, 4, 5]


def test_sequential_greedy():
    assert sequential_greedy(gen_graph("empty", n=4)).tolist() == [1, 1, 1, 1]
    K = gen_graph("complete", n=4)
    assert sequential_greedy(K, [2, 0, 3, 1]).tolist() == [2, 4, 1, 3]


def test_distributed_vs_sequential_palette():
    for seed in range(50):
        g = gen_graph("random_regular", n=40, d=3, seed=seed)
        res = run_deterministic(g, distributed_greedy("vertex"), assign_ids(g, "random", seed=seed))
        assert verify_coloring(g, res.outputs, "vertex", 4).passed
        assert max(sequential_greedy(g)) <= 4


def test_distributed_greedy_examples():
    g = gen_graph("cycle", n=10 ** 5)
    res = run_deterministic(g, distributed_greedy("vertex"), assign_ids(g, "random", seed=1))
    assert verify_coloring(g, res.outputs, "vertex", 3).passed
    K4 = gen_graph("complete", n=4)
    res = run_deterministic(K4, distributed_greedy("vertex"), assign_ids(K4, "random", seed=1))
    assert sorted(res.outputs) == [1, 2, 3, 4]
    C5 = gen_graph("cycle", n=5)
    res = run_deterministic(C5, distributed_greedy("edge"), assign_ids(C5, "random", seed=2))
    assert verify_coloring(C5, res.outputs, "edge", 3).passed


def test_edge_mode_on_regular_graph():
    g = gen_graph("random_regular", n=30, d=3, seed=3)
    res = run_deterministic(g, distributed_greedy("edge"), assign_ids(g, "bfs"))
    assert verify_coloring(g, res.outputs, "edge", 5).passed


def test_schedule_matches_pipeline():
    g = gen_graph("random_regular", n=200, d=3, seed=0)
    ids = assign_ids(g, "random", seed=0)
    _, info = greedy_pipeline(g, ids, g.n, 3, 3)
    it, C = schedule(g.n, 3)
    assert (info["cv_rounds"], info["palette_classes"]) == (it, C)
    assert info["rounds"] == it + C


def test_radius_declared():
    alg = distributed_greedy("vertex", delta=2)
    it, C = schedule(1000, 2)
    assert alg.radius(1000) == it + C and C == 324
