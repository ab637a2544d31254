"""Distributed greedy (Δ+1)-coloring: Cole-Vishkin reduction plus class sweep."""
import math

import numpy as np

from . import kernels
from .errors import ImproperInput
from .localsim import DEFAULT_C, IdAssignment, LocalAlgorithm

_INT64_SAFE = 2 ** 62


def log_star(n):
    """Number of base-2 logarithms needed to bring n down to at most 2."""
    if n < 1:
        raise ValueError("n must be >= 1")
    count = 0
    x = n
    while x > 2:
        x = math.log2(x)
        count += 1
    return count


def _bits(k):
    # ceil(log2 k) for integers k >= 2
    return (int(k) - 1).bit_length()


def cv_bound(k, delta):
    """Palette size after one Cole-Vishkin round: (2*ceil(log2 k))^delta."""
    if k < 2:
        raise ValueError("k must be >= 2")
    return (2 * _bits(k)) ** delta


def cv_fixed_point_chain(k, delta):
    """Palette sizes visited by iterated reduction, stopping once
    cv_bound(k, delta) >= k."""
    chain = [k]
    while k >= 2 and cv_bound(k, delta) < k:
        k = cv_bound(k, delta)
        chain.append(k)
    return chain


def _check_proper(g, colors):
    c = np.asarray(colors, dtype=object if isinstance(colors, list) else None)
    rows = np.repeat(np.arange(g.n, dtype=np.int64), g.degrees)
    bad = np.flatnonzero(c[rows] == c[g.indices])
    if len(bad):
        raise ImproperInput(f"edge ({rows[bad[0]]}, {g.indices[bad[0]]}) is monochromatic")


def _nbr_order(g, ids):
    """CSR neighbor array with each row sorted by neighbor id."""
    if ids is None:
        return g.indices
    if _small(ids):
        rank_src = np.asarray(ids, dtype=np.int64)
    else:
        rank_src = np.asarray(ids, dtype=object)
    rank = np.empty(g.n, dtype=np.int64)
    rank[np.argsort(rank_src, kind="stable")] = np.arange(g.n)
    rows = np.repeat(np.arange(g.n, dtype=np.int64), np.diff(g.indptr))
    order = np.argsort(rows * g.n + rank[g.indices])
    return g.indices[order].astype(np.int32)


def _small(vals):
    return max(vals, default=0) < _INT64_SAFE


def _cv_step_big(g, nbr, colors, L, delta):
    ip = g.indptr.tolist()
    nb = nbr.tolist()
    base = 2 * L
    out = []
    for v in range(g.n):
        cv = colors[v] - 1
        code, mult, cnt, last = 0, 1, 0, 0
        for j in range(ip[v], ip[v + 1]):
            x = cv ^ (colors[nb[j]] - 1)
            if x == 0:
                raise ImproperInput(f"vertex {v} shares its color with a neighbor")
            pos = (x & -x).bit_length() - 1
            last = 2 * pos + ((cv >> pos) & 1)
            code += last * mult
            mult *= base
            cnt += 1
        if cnt > delta:
            raise ImproperInput(f"vertex {v} has degree above {delta}")
        if cnt == 0:
            out.append(1)
            continue
        while cnt < delta:
            code += last * mult
            mult *= base
            cnt += 1
        out.append(code + 1)
    return out


def cv_step(g, colors, k, delta=None, ids=None, _nbr=None):
    """One Cole-Vishkin round.

    Each vertex concatenates, over its neighbors in id order, the pair
    (lowest bit position where the colors differ, own bit there); vertices
    of degree below delta repeat their last pair, isolated vertices get
    color 1. Returns (new colors, cv_bound(k, delta)).
    """
    delta = g.max_degree if delta is None else delta
    L = _bits(k)
    nbr = _nbr_order(g, ids) if _nbr is None else _nbr
    new_k = cv_bound(k, delta)
    cols = colors.tolist() if isinstance(colors, np.ndarray) else list(colors)
    if k < _INT64_SAFE and new_k < _INT64_SAFE:
        out, status = kernels.cv_step(g.indptr, nbr, np.asarray(cols, dtype=np.int64), L, delta)
        if status == 1:
            raise ImproperInput("input coloring is not proper")
        if status == 2:
            raise ImproperInput(f"degree exceeds delta={delta}")
        return out, new_k
    out = _cv_step_big(g, nbr, cols, L, delta)
    if new_k < _INT64_SAFE:
        out = np.asarray(out, dtype=np.int64)
    return out, new_k


def reduce_to_constant(g, colors, k, delta=None, ids=None):
    """Iterate cv_step until cv_bound(k, delta) >= k.

    Returns (colors, final palette size, iterations).
    """
    delta = g.max_degree if delta is None else delta
    if g.m == 0 or delta == 0:
        return np.ones(g.n, dtype=np.int64), 1, 0
    nbr = _nbr_order(g, ids)
    it = 0
    while k >= 2 and cv_bound(k, delta) < k:
        colors, k = cv_step(g, colors, k, delta, _nbr=nbr)
        it += 1
    return colors, k, it


def greedy_finish(g, colors, C, delta=None):
    """Sweep classes 1..C; each class-j vertex takes the least color in
    1..delta+1 absent from its already-finalized neighbors.

    Returns (colors, rounds) with rounds = C.
    """
    delta = g.max_degree if delta is None else delta
    cols = np.asarray(colors, dtype=np.int64)
    _check_proper(g, cols)
    if len(cols) and (cols.min() < 1 or cols.max() > C):
        raise ImproperInput("class labels must lie in 1..C")
    order = np.argsort(cols, kind="stable").astype(np.int64)
    out, bad = kernels.greedy_sweep(g.indptr, g.indices, order,
                                    np.zeros(g.n, dtype=np.int64), delta + 1)
    if bad >= 0:
        raise ImproperInput(f"vertex {bad} has degree above {delta}")
    return out, int(C)


def sequential_greedy(g, order=None):
    """Single greedy pass in the given order (default 0..n-1)."""
    order = np.arange(g.n, dtype=np.int64) if order is None else np.asarray(order, dtype=np.int64)
    out, _ = kernels.greedy_sweep(g.indptr, g.indices, order,
                                  np.zeros(g.n, dtype=np.int64), g.max_degree + 1)
    return out


def greedy_pipeline(g, ids, n, c=DEFAULT_C, delta=None):
    """ids -> reduce_to_constant -> greedy_finish on g.

    The initial palette is the id space n^c (ids shifted to 1..n^c), so
    every ball of every instance of size n uses the same schedule.
    """
    delta = g.max_degree if delta is None else delta
    id_list = ids.ids if hasattr(ids, "ids") else list(ids)
    space = ids.space(n) if hasattr(ids, "space") else n ** c
    k0 = max(space, 2)
    init = [i + 1 for i in id_list]
    if k0 < _INT64_SAFE:
        init = np.asarray(init, dtype=np.int64)
    cols, C, it = reduce_to_constant(g, init, k0, delta, ids=id_list)
    out, sweeps = greedy_finish(g, cols, C, delta)
    return out, {"cv_rounds": it, "sweep_rounds": sweeps, "palette_classes": C,
                 "rounds": it + sweeps}


def schedule(n, delta, c=DEFAULT_C, mode="vertex"):
    """(cv iterations, class count) used by the pipeline for size n."""
    k0 = max(n ** c, 2) if mode == "vertex" else max(n ** (2 * c), 2)
    if delta == 0:
        return 0, 1
    chain = cv_fixed_point_chain(k0, delta)
    return len(chain) - 1, chain[-1]


def distributed_greedy(mode="vertex", delta=None, c=DEFAULT_C):
    """LocalAlgorithm for (Δ+1) vertex coloring or (2Δ-1) edge coloring.

    delta is the degree bound of the graph class; when None the algorithm
    binds to the instance's max degree at run time. Edge mode runs the
    vertex pipeline on the line graph with degree bound 2Δ-2. The declared
    radius is cv iterations + class count.
    """
    name = "greedy_vertex" if mode == "vertex" else "greedy_edge"
    if delta is None:
        alg = LocalAlgorithm(name, None, None, mode=mode)
        alg.for_graph = lambda g: distributed_greedy(mode, g.max_degree, c)
        return alg
    hd = 2 * delta - 2 if mode == "edge" else delta
    hd = max(hd, 0)
    sub_c = 2 * c if mode == "edge" else c

    def radius(n):
        it, C = schedule(n, hd, c, mode)
        return it + C

    def run_global(host, hids, n):
        out, info = greedy_pipeline(host, hids, n, sub_c, hd)
        return out.tolist(), info

    def evaluate(b, n):
        ids = IdAssignment(list(b.labels), sub_c)
        out, _ = greedy_pipeline(b.local_graph, ids, n, sub_c, hd)
        return int(out[b.root])

    alg = LocalAlgorithm(name, radius, evaluate, run_global, mode)
    alg.delta = delta
    return alg
