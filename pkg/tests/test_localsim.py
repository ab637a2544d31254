import numpy as np
import pytest

from localcoloring.errors import AlgorithmUndefined
from localcoloring.graph import Graph, gen_graph
from localcoloring.localsim import (IdAssignment, LocalAlgorithm, RandomTape, assign_ids,
                                    constant_algorithm, edge_ids, encode_ball,
                                    first_bit_algorithm, identity_algorithm, locality_surgery,
                                    run_deterministic, run_randomized, tape_id_algorithm,
                                    verify_coloring)
from localcoloring.graph import ball
from localcoloring.vertex import distributed_greedy


def test_bfs_ids_are_permutation():
    ids = assign_ids(gen_graph("cycle", n=5), "bfs_order", c=1, root=0)
    assert sorted(ids.ids) == list(range(5)) and ids.ids[0] == 0


def test_reverse_bfs():
    ids = assign_ids(gen_graph("path", n=4), "reverse_bfs", c=1, root=0)
    assert ids.ids == [3, 2, 1, 0]


def test_random_ids():
    g = gen_graph("path", n=10)
    ids = assign_ids(g, "random_permutation", c=3, seed=1)
    assert len(set(ids.ids)) == 10 and max(ids.ids) < 1000
    assert ids.is_valid(10)
    assert assign_ids(g, "random_permutation", c=3, seed=1).ids == ids.ids


def test_big_id_space():
    g = gen_graph("path", n=300)
    ids = assign_ids(g, "random", c=8, seed=2)
    # 300^8 exceeds the int64 range, so this takes the big-integer path
    assert ids.is_valid(300)
    assert max(ids.ids) >= 2 ** 62


def test_adversarial_hook():
    g = gen_graph("path", n=4)
    ids = assign_ids(g, "adversarial_hook", c=2, hook=lambda g, c: [15, 0, 7, 3])
    assert ids.ids == [15, 0, 7, 3]
    with pytest.raises(ValueError):
        assign_ids(g, "adversarial_hook", c=1, hook=lambda g, c: [0, 0, 1, 2])


def test_constant_and_identity():
    g = gen_graph("random_regular", n=30, d=3, seed=0)
    ids = assign_ids(g, "random", seed=0)
    r = run_deterministic(g, constant_algorithm(0), ids)
    assert r.outputs == [0] * 30 and r.rounds_used == 0
    r = run_deterministic(g, identity_algorithm(), ids)
    assert r.outputs == ids.ids
    r2 = run_deterministic(g, identity_algorithm(), ids, per_ball=True)
    assert r2.outputs == ids.ids


def test_undefined_output_raises():
    alg = LocalAlgorithm("partial", 0, lambda b, n: None if b.labels[b.root] == 0 else 1)
    g = gen_graph("path", n=3)
    with pytest.raises(AlgorithmUndefined):
        run_deterministic(g, alg, IdAssignment([0, 1, 2], 1))


def test_first_bit_reproducible():
    g = gen_graph("cycle", n=50)
    a = run_randomized(g, first_bit_algorithm(), RandomTape(5)).outputs
    b = run_randomized(g, first_bit_algorithm(), RandomTape(5)).outputs
    assert a == b and set(a) <= {0, 1}
    c = run_randomized(g, first_bit_algorithm(), RandomTape(6)).outputs
    assert a != c


def test_tape_bits_extend_consistently():
    t = RandomTape(3)
    long = t.bits(7, 150)
    assert t.bits(7, 20) == long[:20]
    assert len(long) == 150


def test_tape_ids_injective_frequency():
    n = 64
    g = Graph(n, [])
    alg = tape_id_algorithm(3)
    hits = sum(len(set(run_randomized(g, alg, RandomTape(s)).outputs)) == n for s in range(1000))
    assert hits / 1000 >= 1 - 1 / n


def test_verify_examples():
    C4 = gen_graph("cycle", n=4)
    assert verify_coloring(C4, [1, 2, 1, 2], "vertex", 2).passed
    rep = verify_coloring(gen_graph("cycle", n=3), [1, 2, 1], "vertex")
    assert not rep.passed and rep.violations == [(0, 2)]
    K4 = gen_graph("complete", n=4)
    col = [0] * 6
    for c, match in enumerate([((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))], start=1):
        for u, v in match:
            col[K4.edge_id(u, v)] = c
    assert verify_coloring(K4, col, "edge", 3).passed
    col[0] = col[1]
    bad = verify_coloring(K4, col, "edge", 3)
    assert not bad.passed and bad.violations


def test_verify_range():
    rep = verify_coloring(gen_graph("path", n=3), [1, 5, 1], "vertex", 3)
    assert not rep.passed and rep.out_of_range == [1]
    with pytest.raises(ValueError):
        verify_coloring(gen_graph("path", n=3), [1, 2], "vertex")


def test_edge_ids_injective():
    g = gen_graph("complete", n=5)
    ids = assign_ids(g, "random", c=3, seed=1)
    e = edge_ids(g, ids)
    assert e.c_exponent == 6 and e.is_valid(5) and len(e.ids) == g.m


def test_encode_ball_ignores_local_numbering():
    g = gen_graph("grid", w=5, h=5)
    lab = list(range(25))
    b1 = ball(g, 12, 2, lab)
    # the same neighborhood seen in a relabeled copy of the grid
    perm = np.random.default_rng(0).permutation(25)
    h = Graph(25, [(int(perm[u]), int(perm[v])) for u, v in g.edge_list()])
    lab2 = [0] * 25
    for u in range(25):
        lab2[perm[u]] = u
    b2 = ball(h, int(perm[12]), 2, lab2)
    assert encode_ball(b1) == encode_ball(b2)


def test_locality_surgery_greedy_cycle():
    g = gen_graph("cycle", n=1500)
    ids = assign_ids(g, "random", seed=3)
    rng = np.random.default_rng(0)
    for v in (0, 700):
        same, changed = locality_surgery(g, distributed_greedy("vertex"), ids, v, rng)
        assert same


def test_per_ball_matches_global():
    g = gen_graph("cycle", n=800)
    ids = assign_ids(g, "random", seed=1)
    alg = distributed_greedy("vertex")
    glob = run_deterministic(g, alg, ids).outputs
    for v in (0, 5, 399):
        b = ball(g, v, alg.for_graph(g).radius(g.n), ids.ids)
        assert alg.for_graph(g).evaluate(b, g.n) == glob[v]
