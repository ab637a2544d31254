"""Bounded-degree simple graphs, generators, derived graphs and queries.

Graphs are stored in CSR form (``indptr`` int64, ``indices`` int32) with
sorted rows. Vertex identifiers are 0..n-1; LOCAL-model IDs live in
:mod:`localcoloring.localsim`.
"""
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import DegreeOverflow, EdgeCollision, InfeasibleSpec


class Graph:
    """Immutable simple undirected graph.

    Build from an edge list with ``Graph(n, edges)`` or from CSR arrays
    with :meth:`from_csr`. Edges are kept canonically as sorted (u, v)
    pairs with u < v; edge ids index that list.
    """

    def __init__(self, n, edges=()):
        n = int(n)
        e = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                       dtype=np.int64).reshape(-1, 2)
        if len(e):
            if e.min() < 0 or e.max() >= n:
                raise ValueError("edge endpoint out of range")
            if np.any(e[:, 0] == e[:, 1]):
                raise ValueError("loops are not allowed")
        lo = np.minimum(e[:, 0], e[:, 1])
        hi = np.maximum(e[:, 0], e[:, 1])
        keys = lo * max(n, 1) + hi
        if len(np.unique(keys)) != len(keys):
            raise ValueError("parallel edges are not allowed")
        order = np.argsort(keys, kind="stable")
        self._init_from_edges(n, np.stack([lo[order], hi[order]], axis=1))

    def _init_from_edges(self, n, canon):
        self.n = n
        self.edges = canon
        self.edges.setflags(write=False)
        src = np.concatenate([canon[:, 0], canon[:, 1]])
        dst = np.concatenate([canon[:, 1], canon[:, 0]])
        eid = np.concatenate([np.arange(len(canon)), np.arange(len(canon))])
        order = np.argsort(src * max(n, 1) + dst)
        deg = np.bincount(src, minlength=n) if n else np.zeros(0, dtype=np.int64)
        self.indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(deg, out=self.indptr[1:])
        self.indices = dst[order].astype(np.int32)
        # edge id of each CSR slot
        self.slot_edge = eid[order].astype(np.int64)
        for a in (self.indptr, self.indices, self.slot_edge):
            a.setflags(write=False)
        self.degrees = deg.astype(np.int64)
        self.max_degree = int(deg.max()) if n and len(canon) else 0
        self._edge_lookup = None

    @classmethod
    def from_csr(cls, indptr, indices):
        """Build from CSR arrays with sorted, symmetric rows.

        The canonical edge list and slot-to-edge map are computed lazily.
        """
        g = cls.__new__(cls)
        g.n = len(indptr) - 1
        g.indptr = np.asarray(indptr, dtype=np.int64)
        g.indices = np.asarray(indices, dtype=np.int32)
        g.degrees = np.diff(g.indptr)
        g.max_degree = int(g.degrees.max()) if g.n and len(g.indices) else 0
        g._edge_lookup = None
        g._lazy = True
        for a in (g.indptr, g.indices):
            a.setflags(write=False)
        return g

    def _materialize(self):
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
        dst = self.indices.astype(np.int64)
        mask = src < dst
        canon = np.stack([src[mask], dst[mask]], axis=1)
        self._lazy = False
        self._init_from_edges(self.n, canon)

    def __getattr__(self, name):
        # lazily built attributes of CSR-constructed graphs
        if name in ("edges", "slot_edge") and self.__dict__.get("_lazy"):
            self._materialize()
            return self.__dict__[name]
        raise AttributeError(name)

    @property
    def m(self):
        return len(self.indices) // 2

    def neighbors(self, v):
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def incident_edges(self, v):
        return self.slot_edge[self.indptr[v]:self.indptr[v + 1]]

    def degree(self, v):
        return int(self.indptr[v + 1] - self.indptr[v])

    def edge_id(self, u, v):
        """Id of edge {u, v}; KeyError if absent."""
        if self._edge_lookup is None:
            self._edge_lookup = {(int(a), int(b)): i for i, (a, b) in enumerate(self.edges)}
        a, b = (u, v) if u < v else (v, u)
        return self._edge_lookup[(int(a), int(b))]

    def has_edge(self, u, v):
        row = self.neighbors(u)
        i = np.searchsorted(row, v)
        return bool(i < len(row) and row[i] == v)

    def adjacency(self):
        """Per-vertex sorted neighbor lists as Python lists."""
        ip = self.indptr.tolist()
        ix = self.indices.tolist()
        return [ix[ip[v]:ip[v + 1]] for v in range(self.n)]

    def edge_list(self):
        return [tuple(e) for e in self.edges.tolist()]

    def __eq__(self, other):
        return (isinstance(other, Graph) and self.n == other.n
                and np.array_equal(self.edges, other.edges))

    def __hash__(self):
        return hash((self.n, self.edges.tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m}, max_degree={self.max_degree})"

    def check_invariants(self):
        """Full scan: symmetry, simplicity, sorted rows."""
        adj = self.adjacency()
        for v, row in enumerate(adj):
            if row != sorted(set(row)) or v in row:
                return False
            for w in row:
                if v not in adj[w]:
                    return False
        return True


@dataclass
class EdgeLabeledGraph:
    graph: Graph
    labels: np.ndarray  # label per edge id, values in 1..num_labels
    num_labels: int

    def label(self, u, v):
        return int(self.labels[self.graph.edge_id(u, v)])

    @property
    def nice(self):
        g = self.graph
        for v in range(g.n):
            seen = set(self.labels[g.incident_edges(v)].tolist())
            if len(seen) < self.num_labels:
                return False
        return True


@dataclass
class RootedBall:
    root: int
    local_graph: Graph
    labels: list
    radius: int
    vertices: list = field(default_factory=list)  # global vertex per local id
    dist: list = field(default_factory=list)


class GrowthBound:
    """Growth bound f given in closed form or as a table.

    A table is clamped to its last value beyond its range (with a warning).
    """

    def __init__(self, func=None, table=None, name=None):
        if (func is None) == (table is None):
            raise ValueError("give exactly one of func or table")
        self.func = func
        self.table = list(table) if table is not None else None
        self.name = name or ("table" if table is not None else getattr(func, "__name__", "f"))
        self._warned = False

    def __call__(self, r):
        return self.evaluate(r)

    def evaluate(self, r):
        if self.table is not None:
            if r >= len(self.table):
                if not self._warned:
                    warnings.warn("growth table clamped to its last value", stacklevel=2)
                    self._warned = True
                return self.table[-1]
            return self.table[r]
        return self.func(r)

    def __repr__(self):
        return f"GrowthBound({self.name})"


@dataclass
class GrowthCheck:
    passed: bool
    witness: tuple = None  # (v, r)
    ball_size: int = 0

    def __bool__(self):
        return self.passed


# ---------------------------------------------------------------- generators

def _random_regular_edges(n, d, rng, method, budget):
    stubs = np.repeat(np.arange(n, dtype=np.int64), d)
    if method == "resample":
        for _ in range(budget):
            p = rng.permutation(stubs).reshape(-1, 2)
            lo, hi = p.min(axis=1), p.max(axis=1)
            if np.any(lo == hi):
                continue
            keys = lo * n + hi
            if len(np.unique(keys)) == len(keys):
                return np.stack([lo, hi], axis=1)
        raise InfeasibleSpec(f"no simple pairing after {budget} resamples")
    if method != "repair":
        raise ValueError(f"unknown method {method!r}")
    p = rng.permutation(stubs).reshape(-1, 2)
    for _ in range(budget * 100):
        lo, hi = p.min(axis=1), p.max(axis=1)
        keys = lo * n + hi
        _, first = np.unique(keys, return_index=True)
        dup = np.ones(len(keys), dtype=bool)
        dup[first] = False
        bad = (lo == hi) | dup
        nbad = int(bad.sum())
        if nbad == 0:
            return np.stack([lo, hi], axis=1)
        # re-pair the stubs of bad pairs together with as many random good pairs
        good = np.flatnonzero(~bad)
        extra = rng.choice(good, size=min(len(good), max(nbad, 2)), replace=False)
        sel = np.concatenate([np.flatnonzero(bad), extra])
        p[sel] = rng.permutation(p[sel].ravel()).reshape(-1, 2)
    raise InfeasibleSpec("pairing repair did not converge")


def gen_graph(family, *, n=None, d=None, w=None, h=None, wrap=False, delta=None,
              depth=None, seed=None, method="resample", budget=1000, delta_cap=None):
    """Generate a graph of the named family.

    Families: cycle, path, grid (w, h, wrap), complete, empty, star,
    random_regular (n, d, seed, method), bipartite_regular (n, d, seed),
    truncated_regular_tree (delta, depth),
    petersen, prism.
    """
    if family == "cycle":
        if n is None or n < 3:
            raise InfeasibleSpec("cycle needs n >= 3")
        edges = [(i, (i + 1) % n) for i in range(n)]
        g = Graph(n, edges)
    elif family == "path":
        g = Graph(n, [(i, i + 1) for i in range(n - 1)])
    elif family == "empty":
        g = Graph(n, [])
    elif family == "star":
        g = Graph(n, [(0, i) for i in range(1, n)])
    elif family == "complete":
        g = Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])
    elif family == "grid":
        if w is None or h is None:
            raise InfeasibleSpec("grid needs w and h")
        if wrap and (w < 3 or h < 3):
            raise InfeasibleSpec("wrapped grid needs w, h >= 3")
        edges = []
        for y in range(h):
            for x in range(w):
                v = y * w + x
                if x + 1 < w:
                    edges.append((v, v + 1))
                elif wrap:
                    edges.append((v, y * w))
                if y + 1 < h:
                    edges.append((v, v + w))
                elif wrap:
                    edges.append((v, x))
        g = Graph(w * h, edges)
    elif family == "random_regular":
        if n is None or d is None:
            raise InfeasibleSpec("random_regular needs n and d")
        if (n * d) % 2 or d >= n:
            raise InfeasibleSpec(f"no simple {d}-regular graph on {n} vertices")
        if seed is None:
            raise InfeasibleSpec("random_regular needs a seed")
        rng = np.random.default_rng(seed)
        edges = _random_regular_edges(n, d, rng, method, budget) if d else np.zeros((0, 2), int)
        g = Graph(n, edges)
    elif family == "bipartite_regular":
        if n is None or d is None or n % 2 or d > n // 2:
            raise InfeasibleSpec("bipartite_regular needs even n and d <= n/2")
        if seed is None:
            raise InfeasibleSpec("bipartite_regular needs a seed")
        rng = np.random.default_rng(seed)
        half = n // 2
        for _ in range(budget):
            seen = set()
            edges = []
            ok = True
            for _ in range(d):
                perm = rng.permutation(half)
                for a in range(half):
                    key = (a, half + int(perm[a]))
                    if key in seen:
                        ok = False
                        break
                    seen.add(key)
                    edges.append(key)
                if not ok:
                    break
            if ok:
                break
        else:
            raise InfeasibleSpec(f"no simple bipartite pairing after {budget} tries")
        g = Graph(n, edges)
    elif family == "truncated_regular_tree":
        if delta is None or depth is None:
            raise InfeasibleSpec("tree needs delta and depth")
        edges = []
        frontier = [0]
        nxt_id = 1
        for lvl in range(depth):
            new = []
            for u in frontier:
                for _ in range(delta if lvl == 0 else delta - 1):
                    edges.append((u, nxt_id))
                    new.append(nxt_id)
                    nxt_id += 1
            frontier = new
        g = Graph(nxt_id, edges)
    elif family == "petersen":
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        g = Graph(10, outer + spokes + inner)
    elif family == "prism":
        g = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
    else:
        raise InfeasibleSpec(f"unknown family {family!r}")
    if delta_cap is not None and g.max_degree > delta_cap:
        raise DegreeOverflow(f"max degree {g.max_degree} exceeds cap {delta_cap}")
    return g


def disjoint_union(*graphs):
    edges = []
    off = 0
    for g in graphs:
        edges.append(g.edges + off)
        off += g.n
    return Graph(off, np.concatenate(edges) if edges else [])


# ---------------------------------------------------------------- derived graphs

def power(g, k):
    """k-th power: u ~ v iff 1 <= dist(u, v) <= k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return g
    ptr, idx = kernels.power_csr(g.indptr, g.indices, int(k))
    return Graph.from_csr(ptr, idx)


def line_graph(g):
    """Vertex per edge id of g; adjacent iff the edges share an endpoint."""
    edges = []
    ip = g.indptr.tolist()
    se = g.slot_edge.tolist()
    for v in range(g.n):
        inc = se[ip[v]:ip[v + 1]]
        for a in range(len(inc)):
            for b in range(a + 1, len(inc)):
                edges.append((inc[a], inc[b]))
    return Graph(g.m, edges)


def ball(g, v, t, labels=None):
    """Induced radius-t neighborhood of v, local ids in BFS order (root 0)."""
    order, dist = kernels.bfs_layers(g.indptr, g.indices, int(v), int(t))
    verts = order.tolist()
    local = {u: i for i, u in enumerate(verts)}
    ip = g.indptr.tolist()
    ix = g.indices
    edges = []
    for u in verts:
        lu = local[u]
        for w in ix[ip[u]:ip[u + 1]].tolist():
            lw = local.get(w)
            if lw is not None and lu < lw:
                edges.append((lu, lw))
    lab = [labels[u] for u in verts] if labels is not None else [None] * len(verts)
    return RootedBall(0, Graph(len(verts), edges), lab, int(t), verts, dist.tolist())


def ball_vertices(g, v, t):
    order, _ = kernels.bfs_layers(g.indptr, g.indices, int(v), int(t))
    return order


def distances_from(g, v, t=-1):
    """Dict vertex -> distance for all vertices within t of v."""
    order, dist = kernels.bfs_layers(g.indptr, g.indices, int(v), int(t))
    return dict(zip(order.tolist(), dist.tolist()))


def girth(g):
    """Length of the shortest cycle; math.inf for forests."""
    val = kernels.girth(g.indptr, g.indices)
    return math.inf if val == 0 else int(val)


def _growth_table(f, n, max_radius):
    rmax = n - 1 if max_radius is None else min(max_radius, max(n - 1, 0))
    tab = []
    prev = None
    for r in range(rmax + 1):
        val = f.evaluate(r) if isinstance(f, GrowthBound) else f(r)
        iv = min(n + 1, math.ceil(val)) if val < n + 1 else n + 1
        if prev is not None and iv < prev:
            raise ValueError("growth bound is not monotone")
        tab.append(iv)
        prev = iv
        if iv > n:
            break
    return np.asarray(tab, dtype=np.int64)


def check_growth(g, f, max_radius=None):
    """Check |B(v, r)| < f(r) for all v and all r up to the diameter.

    max_radius limits the scanned radii. Returns a GrowthCheck carrying
    the first witness (least v, then least r) on failure.
    """
    tab = _growth_table(f, g.n, max_radius)
    v, r, size = kernels.growth_violation(g.indptr, g.indices, tab)
    if v < 0:
        return GrowthCheck(True)
    return GrowthCheck(False, (int(v), int(r)), int(size))


def union_labeled(parts):
    """Union of edge-disjoint graphs on one vertex set, labeled by part."""
    if not parts:
        raise ValueError("need at least one part")
    n = parts[0].n
    edges, labels = [], []
    seen = set()
    for i, p in enumerate(parts, start=1):
        if p.n != n:
            raise ValueError("parts must share the vertex set")
        for u, v in p.edge_list():
            if (u, v) in seen:
                raise EdgeCollision(f"edge {(u, v)} appears in two parts")
            seen.add((u, v))
            edges.append((u, v))
            labels.append(i)
    g = Graph(n, edges)
    lab = np.zeros(g.m, dtype=np.int64)
    for (u, v), l in zip(edges, labels):
        lab[g.edge_id(u, v)] = l
    return EdgeLabeledGraph(g, lab, len(parts))


# ---------------------------------------------------------------- text format

def write_graph(g, path, labels=None, num_labels=0):
    """Write `n m L` then one `u v [label]` line per canonical edge."""
    if isinstance(g, EdgeLabeledGraph):
        g, labels, num_labels = g.graph, g.labels, g.num_labels
    lines = [f"{g.n} {g.m} {num_labels if labels is not None else 0}"]
    for i, (u, v) in enumerate(g.edges.tolist()):
        lines.append(f"{u} {v} {int(labels[i])}" if labels is not None else f"{u} {v}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_graph(path):
    """Read the text format; returns Graph or EdgeLabeledGraph when L > 0."""
    with open(path) as fh:
        head = fh.readline().split()
        if len(head) != 3:
            raise ValueError("header must be `n m L`")
        n, m, L = map(int, head)
        rows = [ln.split() for ln in fh if ln.strip()]
    if len(rows) != m:
        raise ValueError(f"expected {m} edges, found {len(rows)}")
    edges = [(int(r[0]), int(r[1])) for r in rows]
    g = Graph(n, edges)
    if L == 0:
        return g
    lab = np.zeros(g.m, dtype=np.int64)
    for (u, v), r in zip(edges, rows):
        lab[g.edge_id(u, v)] = int(r[2])
    return EdgeLabeledGraph(g, lab, L)
