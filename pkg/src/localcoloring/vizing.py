"""(Δ+1)-edge coloring with Vizing chains.

A chain is a sequence of edge ids in which consecutive edges share an
endpoint. Shifting a chain whose first edge is uncolored moves every color
one step toward the front and uncolors the last edge.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (EnumerationBudgetExhausted, ImproperShift, NotAugmenting,
                     NotShiftable, StepBudgetExhausted)


class PartialEdgeColoring:
    """Partial proper edge coloring with palette 1..Δ+1.

    at[v][c] is the edge of color c at v (or -1), so missing-color queries
    and recolors are constant time per color.
    """

    def __init__(self, g, delta=None):
        self.g = g
        self.delta = g.max_degree if delta is None else delta
        self.palette = self.delta + 1
        self.ends = g.edge_list()
        self.color = [0] * g.m
        self.at = [[-1] * (self.palette + 1) for _ in range(g.n)]
        self.colored = 0

    def clone(self):
        d = PartialEdgeColoring.__new__(PartialEdgeColoring)
        d.g, d.delta, d.palette, d.ends = self.g, self.delta, self.palette, self.ends
        d.color = list(self.color)
        d.at = [row[:] for row in self.at]
        d.colored = self.colored
        return d

    @classmethod
    def from_colors(cls, g, colors, delta=None):
        d = cls(g, delta)
        for e, c in enumerate(colors):
            if c:
                d.set_color(e, int(c))
        return d

    def other(self, e, v):
        a, b = self.ends[e]
        return b if a == v else a

    def missing(self, v):
        row = self.at[v]
        return {c for c in range(1, self.palette + 1) if row[c] < 0}

    def least_missing(self, v):
        row = self.at[v]
        for c in range(1, self.palette + 1):
            if row[c] < 0:
                return c
        return 0

    def common_missing(self, u, v):
        ru, rv = self.at[u], self.at[v]
        for c in range(1, self.palette + 1):
            if ru[c] < 0 and rv[c] < 0:
                return c
        return 0

    def edge_at(self, v, c):
        return self.at[v][c]

    def set_color(self, e, c):
        """Color an uncolored edge; ImproperShift on a clash."""
        a, b = self.ends[e]
        if self.color[e]:
            raise ValueError(f"edge {e} already colored")
        if not 1 <= c <= self.palette:
            raise ValueError(f"color {c} outside palette")
        if self.at[a][c] >= 0 or self.at[b][c] >= 0:
            raise ImproperShift(f"color {c} already present at an endpoint of edge {e}")
        self.color[e] = c
        self.at[a][c] = e
        self.at[b][c] = e
        self.colored += 1

    def clear(self, e):
        c = self.color[e]
        if c:
            a, b = self.ends[e]
            self.at[a][c] = -1
            self.at[b][c] = -1
            self.color[e] = 0
            self.colored -= 1
        return c

    def uncolored(self):
        return [e for e, c in enumerate(self.color) if c == 0]

    def is_proper(self):
        for v in range(self.g.n):
            seen = set()
            for e in self.g.incident_edges(v).tolist():
                c = self.color[e]
                if c:
                    if c in seen:
                        return False
                    seen.add(c)
        return True

    def check_tables(self):
        """Table consistency with the color list (for tests)."""
        for v in range(self.g.n):
            for c in range(1, self.palette + 1):
                e = self.at[v][c]
                if e >= 0 and (self.color[e] != c or v not in self.ends[e]):
                    return False
        return sum(1 for c in self.color if c) == self.colored


@dataclass
class Fan:
    pivot: int
    edges: list


@dataclass
class AlternatingPath:
    start: int
    colors: tuple
    edges: list


@dataclass
class VizingChain:
    fan: Fan
    path: AlternatingPath

    @property
    def edges(self):
        return list(self.fan.edges) + list(self.path.edges)


@dataclass
class MultiStepVizingChain:
    steps: list  # list of (Fan, AlternatingPath) with truncated paths
    edges: list  # concatenated edge sequence (junction edges once)
    truncations: list = field(default_factory=list)

    @property
    def step_count(self):
        return len(self.steps)

    def __len__(self):
        return len(self.edges)


# ---------------------------------------------------------------- chains

def is_chain(d, P):
    for i in range(len(P) - 1):
        if not set(d.ends[P[i]]) & set(d.ends[P[i + 1]]):
            return False
    return True


def is_shiftable(d, P):
    if not P or d.color[P[0]] != 0:
        return False
    if len(set(P)) != len(P):
        return False
    if any(d.color[e] == 0 for e in P[1:]):
        return False
    return is_chain(d, P)


def _shift_inplace(d, P):
    if not is_shiftable(d, P):
        raise NotShiftable("chain is not shiftable")
    old = [d.color[e] for e in P]
    for e in P[1:]:
        d.clear(e)
    done = []
    try:
        for i in range(len(P) - 1):
            d.set_color(P[i], old[i + 1])
            done.append(P[i])
    except ImproperShift:
        for e in done:
            d.clear(e)
        for e, c in zip(P[1:], old[1:]):
            d.set_color(e, c)
        raise
    return d


def shift(d, P, inplace=False):
    """d_P: e_i takes d(e_{i+1}), the last edge becomes uncolored.

    Raises NotShiftable or ImproperShift (state left unchanged).
    """
    target = d if inplace else d.clone()
    return _shift_inplace(target, list(P))


def unshift(d, P, inplace=False):
    """Inverse of shift: shift along the reversed chain."""
    return shift(d, list(reversed(P)), inplace)


def is_augmenting(d, P):
    """Shiftable, proper after shifting, and the freed edge then has a
    common missing color at its endpoints."""
    if not is_shiftable(d, P):
        return False
    t = d.clone()
    try:
        _shift_inplace(t, P)
    except ImproperShift:
        return False
    a, b = t.ends[P[-1]]
    return t.common_missing(a, b) != 0


def augment(d, P, inplace=False):
    """Shift along P then color its last edge with the least common
    missing color. Raises NotAugmenting."""
    P = list(P)
    if not is_shiftable(d, P):
        raise NotAugmenting("chain is not shiftable")
    t = d if inplace else d.clone()
    try:
        _shift_inplace(t, P)
    except ImproperShift as exc:
        raise NotAugmenting(str(exc)) from exc
    a, b = t.ends[P[-1]]
    c = t.common_missing(a, b)
    if not c:
        _shift_inplace(t, list(reversed(P)))
        raise NotAugmenting("no common missing color after the shift")
    t.set_color(P[-1], c)
    return t


def alternating_path(d, x, alpha, beta):
    """The α/β path from x: follow α, then β, alternately, stopping when no
    edge continues or an edge would repeat."""
    if alpha == beta:
        raise ValueError("α and β must differ")
    edges = []
    seen = set()
    cur, col = x, alpha
    while True:
        e = d.at[cur][col]
        if e < 0 or e in seen:
            break
        edges.append(e)
        seen.add(e)
        cur = d.other(e, cur)
        col = beta if col == alpha else alpha
    return AlternatingPath(x, (alpha, beta), edges)


def path_end(d, path):
    """Last vertex of a path's walk."""
    cur = path.start
    for e in path.edges:
        cur = d.other(e, cur)
    return cur


def build_vizing_chain(d, x, e):
    """A d-augmenting Vizing chain for the uncolored edge e at x.

    The fan grows at x: the next fan edge is the x-edge colored with the
    least missing color of the current tip. It closes on a common missing
    color, or, when that x-edge is already in the fan, with an α/β path
    (α least missing at x, β least missing at the tip).
    """
    if d.color[e] != 0:
        raise ValueError(f"edge {e} is colored")
    if x not in d.ends[e]:
        raise ValueError(f"vertex {x} is not on edge {e}")
    alpha = d.least_missing(x)
    fan = [e]
    tips = [d.other(e, x)]
    pos = {e: 0}
    while True:
        y = tips[-1]
        if d.common_missing(x, y):
            return VizingChain(Fan(x, fan), AlternatingPath(y, (alpha, alpha), []))
        beta = d.least_missing(y)
        f = d.at[x][beta]
        if f not in pos:
            pos[f] = len(fan)
            fan.append(f)
            tips.append(d.other(f, x))
            continue
        h = pos[f]
        j = len(fan) - 1
        p1 = alternating_path(d, y, alpha, beta)
        cand1 = VizingChain(Fan(x, fan[:j + 1]), p1)
        if is_augmenting(d, cand1.edges):
            return cand1
        p2 = alternating_path(d, tips[h - 1], alpha, beta)
        cand2 = VizingChain(Fan(x, fan[:h]), p2)
        if is_augmenting(d, cand2.edges):
            return cand2
        raise AssertionError("neither Vizing chain candidate is augmenting")


def sequential_vizing(g, order=None, delta=None):
    """Color edges one by one with build_vizing_chain + augment."""
    d = PartialEdgeColoring(g, delta)
    for e in (range(g.m) if order is None else order):
        e = int(e)
        x = d.ends[e][0]
        W = build_vizing_chain(d, x, e)
        augment(d, W.edges, inplace=True)
    return d


# ---------------------------------------------------------------- multi-step chains

def default_trunc_len(n, delta, factor=None):
    factor = delta if factor is None else factor
    return max(2, math.ceil(math.log2(max(n, 2))) * factor)


def _combine(parts):
    """Concatenate step chains, keeping each junction edge once."""
    out = list(parts[0])
    for p in parts[1:]:
        out.extend(p[1:])
    return out


def _step_edges(W, k=None):
    path = W.path.edges if k is None else W.path.edges[:k]
    return list(W.fan.edges) + list(path)


def multi_step_search(d, e, max_steps=64, trunc_len=None, seed=0, x=None, restarts=20):
    """Search for an augmenting multi-step Vizing chain from the uncolored edge e.

    Each step grows a Vizing chain; if its path is longer than trunc_len, the
    path is cut after a uniform number k of edges in 1..trunc_len, the cut
    chain is shifted virtually, and the next step starts from the edge left
    uncolored at the far end. Later steps avoid all earlier edges and pivots.
    """
    if d.color[e] != 0:
        raise ValueError(f"edge {e} is colored")
    ell = default_trunc_len(d.g.n, d.delta) if trunc_len is None else trunc_len
    rng = np.random.default_rng(seed)
    x0 = d.ends[e][0] if x is None else x
    for _ in range(restarts):
        t = d.clone()
        cur_e, cur_x = e, x0
        parts, steps, truncs = [], [], []
        used, pivots = set(), set()
        for _step in range(max_steps):
            W = build_vizing_chain(t, cur_x, cur_e)
            fan_new = [f for f in W.fan.edges if f != cur_e]
            if any(f in used for f in fan_new) or cur_x in pivots:
                break
            if len(W.path.edges) <= ell:
                if any(f in used for f in W.path.edges):
                    break
                parts.append(W.edges)
                steps.append((W.fan, W.path))
                chain = _combine(parts)
                if is_augmenting(d, chain):
                    return MultiStepVizingChain(steps, chain, truncs)
                break
            # pick a truncation point whose prefix avoids earlier edges
            top = min(ell, len(W.path.edges) - 1)
            ks = rng.permutation(np.arange(1, top + 1)).tolist()
            chosen = None
            for k in ks:
                pref = W.path.edges[:k]
                if any(f in used for f in pref):
                    continue
                far = _walk_end(t, W.path.start, pref)
                if far in pivots or far == cur_x:
                    continue
                chosen = (k, far)
                break
            if chosen is None:
                break
            k, far = chosen
            step = _step_edges(W, k)
            _shift_inplace(t, step)
            parts.append(step)
            steps.append((W.fan, AlternatingPath(W.path.start, W.path.colors, W.path.edges[:k])))
            truncs.append(k)
            used.update(step)
            pivots.add(cur_x)
            cur_e, cur_x = step[-1], far
    raise StepBudgetExhausted(f"no augmenting chain within {max_steps} steps and {restarts} restarts")


def _walk_end(d, start, edges):
    cur = start
    for f in edges:
        cur = d.other(f, cur)
    return cur


def enumerate_chains(d, e, max_steps, trunc_len, budget=10 ** 6):
    """All multi-step chains from the uncolored edge e (both pivots).

    A chain is either a full Vizing chain (path no longer than trunc_len) or
    a chain truncated at k in 1..min(trunc_len, len(path)-1); truncated
    chains continue recursively for up to max_steps steps under the same
    disjointness rules as multi_step_search. Returns a list of edge tuples.
    """
    out = []

    def rec(t, cur_e, cur_x, parts, used, pivots, depth):
        if len(out) > budget:
            raise EnumerationBudgetExhausted(f"more than {budget} chains")
        W = build_vizing_chain(t, cur_x, cur_e)
        fan_new = [f for f in W.fan.edges if f != cur_e]
        if any(f in used for f in fan_new) or cur_x in pivots:
            return
        if len(W.path.edges) <= trunc_len and not any(f in used for f in W.path.edges):
            out.append(tuple(_combine(parts + [W.edges])))
        if depth >= max_steps:
            return
        top = min(trunc_len, len(W.path.edges) - 1)
        for k in range(1, top + 1):
            pref = W.path.edges[:k]
            if any(f in used for f in pref):
                break
            far = _walk_end(t, W.path.start, pref)
            if far in pivots or far == cur_x:
                continue
            step = _step_edges(W, k)
            out.append(tuple(_combine(parts + [step])))
            if depth < max_steps:
                t2 = t.clone()
                _shift_inplace(t2, step)
                rec(t2, step[-1], far, parts + [step], used | set(step),
                    pivots | {cur_x}, depth + 1)

    for x in d.ends[e]:
        rec(d, e, x, [], set(), set(), 1)
    return out


def chain_census(d, max_steps, trunc_len, budget=10 ** 6):
    """Map uncolored edge -> list of its enumerated chains."""
    return {e: enumerate_chains(d, e, max_steps, trunc_len, budget) for e in d.uncolored()}


def chains_through(d, f, max_steps, trunc_len, budget=10 ** 6, census=None):
    """Number of enumerated chains (over all uncolored edges) containing f."""
    if d.color[f] == 0:
        return 0
    census = chain_census(d, max_steps, trunc_len, budget) if census is None else census
    return sum(1 for chains in census.values() for C in chains if f in C)
