"""LOCAL-model simulation: ID assignments, random tapes, runs and verification.

An algorithm with radius t is evaluated as a function of each vertex's
radius-t ball (no explicit message passing). Algorithms may also carry a
whole-graph fast path, which must agree with per-ball evaluation.
"""
import time
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import AlgorithmUndefined
from .graph import Graph, ball, line_graph

DEFAULT_C = 3


@dataclass
class IdAssignment:
    ids: list  # per-vertex integer id
    c_exponent: int = DEFAULT_C

    def space(self, n):
        return n ** self.c_exponent

    def is_valid(self, n):
        return len(set(self.ids)) == len(self.ids) and all(0 <= i < self.space(n) for i in self.ids)


def assign_ids(g, strategy="random_permutation", c=DEFAULT_C, seed=None, root=0, hook=None):
    """Injective ids in 0..n^c-1.

    Strategies: random_permutation (seeded sample of distinct values),
    bfs_order (BFS rank from root), reverse_bfs, adversarial_hook (hook(g, c)
    returns the id list).
    """
    if c < 1:
        raise ValueError("c must be >= 1")
    n = g.n
    space = n ** c
    if strategy in ("random_permutation", "random"):
        rng = np.random.default_rng(seed)
        if space < 2 ** 62:
            vals = np.unique(rng.integers(0, space, size=n))
            while len(vals) < n:
                vals = np.unique(np.concatenate([vals, rng.integers(0, space, size=n - len(vals))]))
            ids = rng.permutation(vals).tolist()
        else:
            seen = set()
            ids = []
            while len(ids) < n:
                x = int.from_bytes(rng.bytes((space.bit_length() + 7) // 8), "little") % space
                if x not in seen:
                    seen.add(x)
                    ids.append(x)
    elif strategy in ("bfs_order", "bfs", "reverse_bfs", "reverse-bfs"):
        order = kernels.bfs_full_order(g.indptr, g.indices, root) if n else np.zeros(0, np.int64)
        rank = np.empty(n, dtype=np.int64)
        rank[order] = np.arange(n)
        if strategy.startswith("reverse"):
            rank = n - 1 - rank
        ids = rank.tolist()
    elif strategy == "adversarial_hook":
        ids = [int(x) for x in hook(g, c)]
    else:
        raise ValueError(f"unknown id strategy {strategy!r}")
    out = IdAssignment(ids, c)
    if strategy == "adversarial_hook" and not out.is_valid(n):
        raise ValueError("hook returned a non-injective or out-of-range assignment")
    return out


class RandomTape:
    """Per-vertex lazily extended random bit streams derived from one seed."""

    CHUNK = 64

    def __init__(self, seed):
        self.seed = int(seed)
        self._gens = {}
        self._bits = {}

    def bits(self, v, k):
        """First k bits of vertex v's stream (prefix-stable)."""
        v = int(v)
        buf = self._bits.get(v)
        if buf is None:
            self._gens[v] = np.random.default_rng(np.random.SeedSequence([self.seed, v]))
            buf = self._bits[v] = []
        while len(buf) < k:
            buf.extend(self._gens[v].integers(0, 2, size=self.CHUNK).tolist())
        return buf[:k]

    def view(self, v):
        return TapeView(self, v)


@dataclass(frozen=True)
class TapeView:
    tape: RandomTape
    vertex: int

    def bits(self, k):
        return self.tape.bits(self.vertex, k)

    def integer(self, k):
        """The first k bits read as a binary number."""
        out = 0
        for b in self.bits(k):
            out = 2 * out + b
        return out


class LocalAlgorithm:
    """A t-round LOCAL algorithm.

    radius(n) gives the round budget; evaluate(ball, n) maps a labeled
    rooted ball to an output label (None means undefined). run_global, if
    given, computes all outputs at once and must agree with evaluate.
    mode is "vertex" or "edge"; edge algorithms run on the line graph.
    """

    def __init__(self, name, radius, evaluate, run_global=None, mode="vertex"):
        self.name = name
        self._radius = radius
        self.evaluate = evaluate
        self.run_global = run_global
        self.mode = mode

    def for_graph(self, g):
        """Algorithm specialised to instance g (identity unless overridden)."""
        return self

    def radius(self, n):
        return self._radius(n) if callable(self._radius) else int(self._radius)

    def __repr__(self):
        return f"LocalAlgorithm({self.name!r}, mode={self.mode})"


@dataclass
class RunResult:
    outputs: list
    rounds_used: int
    wall_time: float
    info: dict = field(default_factory=dict)


def edge_ids(g, ids):
    """Line-graph ids: id(u)*N + id(v) for each edge u<v (by id), N = n^c."""
    N = ids.space(g.n)
    out = []
    for u, v in g.edges.tolist():
        a, b = ids.ids[u], ids.ids[v]
        if a > b:
            a, b = b, a
        out.append(a * N + b)
    return IdAssignment(out, 2 * ids.c_exponent)


def _host(g, alg, ids):
    if alg.mode == "edge":
        lg = line_graph(g)
        return lg, (edge_ids(g, ids) if ids is not None else None)
    return g, ids


def _per_ball(g, alg, labels, n, t, vertices=None):
    outs = []
    for v in (range(g.n) if vertices is None else vertices):
        b = ball(g, v, t, labels)
        o = alg.evaluate(b, n)
        if o is None:
            raise AlgorithmUndefined(f"{alg.name} has no output at vertex {v}")
        outs.append(o)
    return outs


def run_deterministic(g, alg, ids, per_ball=False):
    """Run alg on g with the given ids.

    Edge-mode algorithms run on the line graph with pair ids; outputs are
    then indexed by edge id. n is the vertex count of g.
    """
    t0 = time.perf_counter()
    alg = alg.for_graph(g)
    host, hids = _host(g, alg, ids)
    n = g.n
    t = alg.radius(n)
    if alg.run_global is not None and not per_ball:
        outs, info = alg.run_global(host, hids, n)
        if any(o is None for o in outs):
            raise AlgorithmUndefined(f"{alg.name} left some output undefined")
    else:
        outs = _per_ball(host, alg, hids.ids, n, t)
        info = {}
    return RunResult(list(outs), t, time.perf_counter() - t0, info)


def run_randomized(g, alg, tape, per_ball=True):
    """Run alg with tape prefixes as labels (reproducible given the seed)."""
    t0 = time.perf_counter()
    alg = alg.for_graph(g)
    host = line_graph(g) if alg.mode == "edge" else g
    n = g.n
    t = alg.radius(n)
    labels = [tape.view(v) for v in range(host.n)]
    if alg.run_global is not None and not per_ball:
        outs, info = alg.run_global(host, labels, n)
    else:
        outs, info = _per_ball(host, alg, labels, n, t), {}
    return RunResult(list(outs), t, time.perf_counter() - t0, info)


def encode_ball(b):
    """Canonical serialized form of a labeled rooted ball.

    BFS from the root with children ordered by (label, local index); the
    encoding lists (label, parent position, sorted neighbor positions).
    """
    adj = b.local_graph.adjacency()
    key = lambda u: (b.labels[u], u)  # noqa: E731
    pos = {b.root: 0}
    order = [b.root]
    parent = [-1]
    i = 0
    while i < len(order):
        u = order[i]
        for w in sorted(adj[u], key=key):
            if w not in pos:
                pos[w] = len(order)
                order.append(w)
                parent.append(pos[u])
        i += 1
    return tuple((b.labels[u], parent[k], tuple(sorted(pos[w] for w in adj[u])))
                 for k, u in enumerate(order))


# ---------------------------------------------------------------- verification

@dataclass
class VerifyReport:
    passed: bool
    violations: list = field(default_factory=list)  # conflicting edges or edge pairs
    out_of_range: list = field(default_factory=list)  # items with a label outside 1..k

    def __bool__(self):
        return self.passed

    def summary(self):
        if self.passed:
            return "ok"
        return f"{len(self.violations)} conflicts, {len(self.out_of_range)} out-of-range labels"


def _label_array(outs):
    if all(isinstance(o, (int, np.integer)) and abs(int(o)) < 2 ** 62 for o in outs):
        return np.asarray(outs, dtype=np.int64)
    return np.asarray(outs, dtype=object)


def _out_of_range(arr, k):
    if arr.dtype == object:
        return [i for i, c in enumerate(arr.tolist())
                if c is None or (k is not None and not 1 <= c <= k)]
    if k is None:
        return []
    return np.flatnonzero((arr < 1) | (arr > k)).tolist()


def verify_coloring(g, outputs, mode="vertex", k=None):
    """Properness and range check for vertex or edge colorings.

    Vertex mode reports every monochromatic edge (u, v). Edge mode reports
    every pair of same-colored edges sharing an endpoint, as
    ((u1, v1), (u2, v2)).
    """
    outs = list(outputs)
    if mode == "vertex":
        if len(outs) != g.n:
            raise ValueError("need one label per vertex")
        arr = _label_array(outs)
        bad_range = _out_of_range(arr, k)
        e = g.edges
        same = np.flatnonzero(arr[e[:, 0]] == arr[e[:, 1]]) if len(e) else []
        viol = [tuple(e[i].tolist()) for i in same]
    elif mode == "edge":
        if len(outs) != g.m:
            raise ValueError("need one label per edge")
        arr = _label_array(outs)
        bad_range = [tuple(g.edges[i].tolist()) for i in _out_of_range(arr, k)]
        viol = []
        rows = np.repeat(np.arange(g.n), np.diff(g.indptr))
        slot_col = arr[g.slot_edge]
        clash = False
        if len(rows):
            keyed = sorted(zip(rows.tolist(), slot_col.tolist())) if arr.dtype == object else None
            if keyed is None:
                pair = np.stack([rows, slot_col.astype(np.int64)], axis=1)
                clash = len(np.unique(pair, axis=0)) < len(pair)
            else:
                clash = len(set(keyed)) < len(keyed)
        if clash:
            el = g.edge_list()
            for v in range(g.n):
                by_color = {}
                for e in g.incident_edges(v).tolist():
                    by_color.setdefault(outs[e], []).append(e)
                for es in by_color.values():
                    for a in range(len(es)):
                        for b in range(a + 1, len(es)):
                            viol.append((el[es[a]], el[es[b]]))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return VerifyReport(not viol and not bad_range, viol, bad_range)


# ---------------------------------------------------------------- surgery

def _perturb(g, ids, v, t, rng, swaps=20):
    """Rewire edges and relabel ids strictly outside B(v, t).

    Only edges with both endpoints at distance > t are swapped (degree
    preserving), so the induced ball and every degree are unchanged. Ids
    outside the ball are permuted among themselves.
    """
    from .graph import distances_from
    dist = distances_from(g, v, t)
    outside = np.array([u for u in range(g.n) if u not in dist], dtype=np.int64)
    edges = [tuple(e) for e in g.edge_list()]
    eset = set(edges)
    free = [i for i, (a, b) in enumerate(edges) if a not in dist and b not in dist]
    changed = 0
    for _ in range(swaps * 5):
        if changed >= swaps or len(free) < 2:
            break
        i, j = rng.choice(len(free), size=2, replace=False)
        (a, b), (c, d) = edges[free[i]], edges[free[j]]
        if rng.random() < 0.5:
            c, d = d, c
        new1, new2 = tuple(sorted((a, d))), tuple(sorted((c, b)))
        if a == d or c == b or new1 in eset or new2 in eset or new1 == new2:
            continue
        eset -= {edges[free[i]], edges[free[j]]}
        eset |= {new1, new2}
        edges[free[i]], edges[free[j]] = new1, new2
        changed += 1
    new_ids = list(ids.ids)
    if len(outside) > 1:
        vals = [new_ids[u] for u in outside]
        perm = rng.permutation(len(vals))
        for u, p in zip(outside.tolist(), perm.tolist()):
            new_ids[u] = vals[p]
    return Graph(g.n, sorted(eset)), IdAssignment(new_ids, ids.c_exponent), changed


def locality_surgery(g, alg, ids, v, rng, swaps=20):
    """One surgery trial at vertex v (vertex-mode algorithms).

    Returns (unchanged, changed_edges): whether the output at v survives
    a perturbation of g and of the ids outside B(v, t).
    """
    alg = alg.for_graph(g)
    t = alg.radius(g.n)
    before = run_deterministic(g, alg, ids).outputs[v]
    g2, ids2, changed = _perturb(g, ids, v, t, rng, swaps)
    after = run_deterministic(g2, alg, ids2).outputs[v]
    return before == after, changed


# ---------------------------------------------------------------- simple algorithms

def constant_algorithm(label=0):
    return LocalAlgorithm("constant", 0, lambda b, n: label,
                          run_global=lambda g, lab, n: ([label] * g.n, {}))


def identity_algorithm():
    return LocalAlgorithm("identity", 0, lambda b, n: b.labels[b.root],
                          run_global=lambda g, lab, n: (list(lab.ids), {}))


def first_bit_algorithm():
    return LocalAlgorithm("first_bit", 0, lambda b, n: b.labels[b.root].bits(1)[0])


def tape_id_algorithm(c=DEFAULT_C):
    """Reads floor(log2 n^c) tape bits as a simulated id."""
    def evaluate(b, n):
        k = max(1, (n ** c).bit_length() - 1)
        return b.labels[b.root].integer(k)
    return LocalAlgorithm("tape_id", 0, evaluate)
