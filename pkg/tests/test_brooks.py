import numpy as np
import pytest

import oracles
from localcoloring.brooks import (choose_R, find_augmenting_recoloring, find_kclique,
                                  sequential_brooks, subexp_brooks, apply_patch)
from localcoloring.errors import (GrowthViolated, InfeasibleSpec, KCliqueFound, NoPatchInBall,
                                  NoRFound, OddCycleWithDeltaTwo)
from localcoloring.graph import Graph, distances_from, gen_graph
from localcoloring.localsim import verify_coloring

QUAD = lambda r: 2 * r * r + 2 * r + 2  # noqa: E731

# 3-regular instance where vertex 6 needs a shift path through three vertices
HARD_EDGES = [(0, 3), (0, 6), (0, 10), (1, 2), (1, 7), (1, 11), (2, 3), (2, 5), (3, 9), (4, 7),
              (4, 8), (4, 10), (5, 8), (5, 10), (6, 8), (6, 11), (7, 9), (9, 11)]
HARD_COLORS = [3, 2, 3, 1, 3, 1, 0, 1, 2, 3, 2, 1]


def test_choose_R_linear():
    assert choose_R(lambda r: r + 2, 0.5) == 3


def test_choose_R_quadratic_predicate():
    R = choose_R(QUAD, 10)
    eps = max(j / 1000 for j in range(1, 1001) if 10 * np.log2(1 + j / 1000) < 1)
    assert QUAD(R) < (1 + eps) ** R
    assert QUAD(R - 1) >= (1 + eps) ** (R - 1)
    assert choose_R(QUAD, 0.5) == 7


def test_choose_R_exponential():
    with pytest.raises(NoRFound):
        choose_R(lambda r: 2 ** r, 1, budget=300)


def test_find_kclique():
    assert find_kclique(gen_graph("complete", n=4), 3) is not None
    assert find_kclique(gen_graph("prism"), 3) is None


def test_patch_free_color():
    g = gen_graph("path", n=3)
    p = find_augmenting_recoloring(g, [1, 0, 1], 1, 1, delta=3)
    assert p.changed == {1: 2}


def test_patch_length_two_shift():
    # v=0 sees colors 1,2,3; neighbor 1 (color 1) can move to the free color 2
    g = Graph(5, [(0, 1), (0, 2), (0, 3), (1, 4)])
    colors = [0, 1, 2, 3, 3]
    p = find_augmenting_recoloring(g, colors, 0, 2, delta=3)
    assert p.changed == {0: 1, 1: 2}


def test_patch_length_three_is_minimal():
    g = Graph(12, HARD_EDGES)
    assert oracles.shortest_shift_path(12, HARD_EDGES, HARD_COLORS, 6, 3) == 3
    p = find_augmenting_recoloring(g, HARD_COLORS, 6, 3, delta=3)
    assert p.method == "shift" and len(p.changed) == 3
    out = apply_patch(list(HARD_COLORS), p)
    assert verify_coloring(g, out, "vertex", 3).passed


def test_patch_stays_in_ball():
    g = Graph(12, HARD_EDGES)
    p = find_augmenting_recoloring(g, HARD_COLORS, 6, 3, delta=3)
    dist = distances_from(g, 6, 3)
    assert all(u in dist for u in p.changed)
    assert p.radius_from(g) <= 3


def test_patch_radius_too_small():
    g = Graph(12, HARD_EDGES)
    with pytest.raises(NoPatchInBall):
        find_augmenting_recoloring(g, HARD_COLORS, 6, 1, delta=3)


@pytest.mark.parametrize("side", [10, 13])
def test_subexp_torus(side):
    g = gen_graph("grid", w=side, h=side, wrap=True)
    res = subexp_brooks(g, QUAD, C=0.5, seed=side)
    assert verify_coloring(g, res.colors.tolist(), "vertex", 4).passed
    assert res.R == 7 and res.k == 4 ** 16 + 1 and res.sweeps == res.k
    assert len(res.sweep_log) <= g.n


def test_subexp_prism():
    g = gen_graph("prism")
    res = subexp_brooks(g, lambda r: 7, C=0.5, seed=0)
    assert verify_coloring(g, res.colors.tolist(), "vertex", 3).passed
    assert oracles.chromatic_number(6, g.edge_list()) == 3


def test_subexp_rejections():
    with pytest.raises(KCliqueFound):
        subexp_brooks(gen_graph("complete", n=4), lambda r: 5, C=0.5)
    with pytest.raises(GrowthViolated):
        subexp_brooks(gen_graph("grid", w=10, h=10, wrap=True), lambda r: r + 2, C=0.5)
    with pytest.raises(InfeasibleSpec):
        subexp_brooks(gen_graph("cycle", n=8), lambda r: 10, C=0.5)


def test_sequential_brooks():
    assert verify_coloring(gen_graph("cycle", n=8), sequential_brooks(gen_graph("cycle", n=8)).tolist(),
                           "vertex", 2).passed
    with pytest.raises(OddCycleWithDeltaTwo):
        sequential_brooks(gen_graph("cycle", n=5))
    P = gen_graph("petersen")
    assert oracles.chromatic_number(10, P.edge_list()) == 3
    assert verify_coloring(P, sequential_brooks(P).tolist(), "vertex", 3).passed
    with pytest.raises(KCliqueFound):
        sequential_brooks(gen_graph("complete", n=5))


@pytest.mark.parametrize("seed", range(15))
def test_sequential_brooks_random(seed):
    g = gen_graph("random_regular", n=40, d=3 + seed % 3, seed=seed, method="repair")
    if find_kclique(g) is not None:
        pytest.skip("contains K_{Δ+1}")
    out = sequential_brooks(g)
    assert verify_coloring(g, out.tolist(), "vertex", g.max_degree).passed
