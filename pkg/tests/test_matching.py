import numpy as np
import pytest

import oracles
from localcoloring.errors import NotAugmenting
from localcoloring.graph import Graph, gen_graph
from localcoloring.matching import (Matching, bipartition, doubling_stages, find_aug_path, flip,
                                    is_augmenting_path, maximal_matching, stage_eliminate)


def test_maximal_examples():
    assert len(maximal_matching(gen_graph("cycle", n=4))) == 2
    m = maximal_matching(gen_graph("star", n=5))
    assert len(m) == 1 and len(m.unmatched) == 3
    m = maximal_matching(gen_graph("empty", n=3))
    assert len(m) == 0 and m.unmatched == [0, 1, 2]


def test_find_single_edge_and_perfect():
    g = gen_graph("path", n=2)
    assert find_aug_path(g, Matching(g), 3) == [0, 1]
    C4 = gen_graph("cycle", n=4)
    assert find_aug_path(C4, maximal_matching(C4), 10) is None


def test_find_length_four():
    P4 = gen_graph("path", n=4)
    assert find_aug_path(P4, Matching(P4, [(1, 2)]), 10) == [0, 1, 2, 3]
    # on P5 with (1, 2) matched the free edge (3, 4) is shorter
    P5 = gen_graph("path", n=5)
    M = Matching(P5, [(1, 2)])
    assert is_augmenting_path(M, [0, 1, 2, 3])
    assert oracles.shortest_augmenting_length(5, P5.edge_list(), M.mate, 10) == 2
    assert sorted(find_aug_path(P5, M, 10)) == [3, 4]
    assert find_aug_path(P5, M, 2) is None


def test_flip_examples():
    g = gen_graph("path", n=2)
    M = flip(Matching(g), [0, 1])
    assert M.edges == [(0, 1)]
    P4 = gen_graph("path", n=4)
    M = flip(Matching(P4, [(1, 2)]), [0, 1, 2, 3])
    assert M.edges == [(0, 1), (2, 3)] and M.covered() == {0, 1, 2, 3}
    with pytest.raises(NotAugmenting):
        flip(Matching(P4, [(1, 2)]), [0, 1])


def test_stage_k3_gives_maximal():
    g = gen_graph("random_regular", n=30, d=3, seed=1)
    M = stage_eliminate(g, Matching(g), 3)
    for u, v in g.edge_list():
        assert M.mate[u] >= 0 or M.mate[v] >= 0
    # with vertex-count lengths no path is shorter than 2, so k=2 changes nothing
    assert len(stage_eliminate(g, Matching(g), 2)) == 0


def test_stage_idempotent():
    g = gen_graph("random_regular", n=40, d=3, seed=2)
    M = stage_eliminate(g, Matching(g), 6)
    again = stage_eliminate(g, M, 6)
    assert again.edges == M.edges


@pytest.mark.parametrize("seed", range(10))
def test_general_graph_postcondition(seed):
    g = gen_graph("random_regular", n=14, d=3, seed=seed)
    rng = np.random.default_rng(seed)
    M0 = maximal_matching(g, rng.permutation(g.m))
    for k in (4, 6, 8):
        M = stage_eliminate(g, M0, k)
        assert M.is_valid() and M0.covered() <= M.covered()
        # the oracle bound is inclusive, the stage bound strict
        L = oracles.shortest_augmenting_length(g.n, g.edge_list(), M.mate, k - 1)
        assert L is None


@pytest.mark.parametrize("seed", range(10))
def test_bipartite_search_is_shortest(seed):
    g = gen_graph("bipartite_regular", n=16, d=3, seed=seed)
    M = maximal_matching(g, np.random.default_rng(seed).permutation(g.m))
    want = oracles.shortest_augmenting_length(g.n, g.edge_list(), M.mate, 19)
    got = find_aug_path(g, M, 20)
    assert (got is None and want is None) or (len(got) == want and is_augmenting_path(M, got))


def test_doubling_bipartite_perfect():
    g = gen_graph("bipartite_regular", n=200, d=3, seed=4)
    M, logs = doubling_stages(g)
    assert not M.unmatched and M.is_valid()
    assert [lg.k for lg in logs] == [2 ** (i + 1) for i in range(len(logs))]
    assert bipartition(g) is not None


def test_bipartition_odd_cycle():
    assert bipartition(gen_graph("cycle", n=5)) is None


def test_matching_rejects_conflicts():
    g = gen_graph("path", n=3)
    with pytest.raises(ValueError):
        Matching(g, [(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        Matching(Graph(3, [(0, 1)]), [(0, 2)])
