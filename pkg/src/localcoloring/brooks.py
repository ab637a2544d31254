"""Δ-coloring by augmenting recolorings inside balls.

subexp_brooks colors a graph of subexponential growth: it picks a radius
R from the growth bound, colors the power graph G^(2R+2) to get a class
schedule, and sweeps the classes, letting every vertex of the current class
recolor inside its own radius-R ball.
"""
import math
import time
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import (GrowthViolated, InfeasibleSpec, KCliqueFound, NoPatchInBall,
                     NoRFound, OddCycleWithDeltaTwo)
from .graph import check_growth, distances_from, power
from .localsim import assign_ids
from .vertex import greedy_pipeline

EPS_GRID = 1000


@dataclass
class RecoloringPatch:
    changed: dict  # vertex -> new color
    newly_colored: int
    method: str = "shift"

    @property
    def vertices(self):
        return set(self.changed)

    def radius_from(self, g):
        """Largest distance from newly_colored to a changed vertex."""
        dist = distances_from(g, self.newly_colored, -1)
        return max(dist[u] for u in self.changed)


@dataclass
class BrooksResult:
    colors: np.ndarray
    R: int
    k: int  # class count Δ^(2R+2)+1
    sweeps: int
    power_rounds: int
    sweep_log: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def rounds(self):
        return self.power_rounds + self.sweeps


def choose_R(f, C, budget=10000):
    """Least R with f(R) < (1+ε)^R, ε the largest grid value with C·log2(1+ε) < 1."""
    if C <= 0:
        raise ValueError("C must be positive")
    eps = None
    for j in range(EPS_GRID, 0, -1):
        if C * math.log2(1 + j / EPS_GRID) < 1:
            eps = Fraction(j, EPS_GRID)
            break
    if eps is None:
        raise NoRFound(f"no grid ε satisfies C·log2(1+ε) < 1 for C={C}")
    base = 1 + eps
    log_base = math.log(float(base))
    for R in range(budget + 1):
        val = f(R)
        # exact rational comparison while the numbers stay moderate
        if R <= 4000:
            if Fraction(val) < base ** R:
                return R
        elif math.log(val) < R * log_base:
            return R
    raise NoRFound(f"f never dips below (1+ε)^R for R <= {budget}")


def find_kclique(g, delta=None):
    """A vertex of degree delta whose closed neighborhood is a clique, or None."""
    delta = g.max_degree if delta is None else delta
    adj = g.adjacency()
    for v in range(g.n):
        if len(adj[v]) != delta:
            continue
        nb = adj[v]
        sets = [set(adj[u]) for u in nb]
        if all(nb[b] in sets[a] for a in range(len(nb)) for b in range(a + 1, len(nb))):
            return [v] + nb
    return None


def _region(adj, colors, v, R):
    """Component of v in B(v, R) restricted to colored vertices plus v.

    Returns dict vertex -> distance from v inside the region.
    """
    dist = {v: 0}
    q = deque([v])
    while q:
        u = q.popleft()
        if dist[u] >= R:
            continue
        for w in adj[u]:
            if w not in dist and colors[w] > 0:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


def _free_color(adj, colors, newcol, x, delta):
    used = set()
    for w in adj[x]:
        c = newcol.get(w, colors[w])
        if c:
            used.add(c)
    for c in range(1, delta + 1):
        if c not in used:
            return c
    return 0


def _shift_patch(adj, colors, path, delta):
    """Patch for the shift along path, or None if it is not proper."""
    newcol = {}
    for i in range(len(path) - 1):
        newcol[path[i]] = colors[path[i + 1]]
    last = path[-1]
    newcol[last] = 0
    gamma = _free_color(adj, colors, newcol, last, delta)
    if not gamma:
        return None
    newcol[last] = gamma
    for u in path:
        cu = newcol[u]
        for w in adj[u]:
            if newcol.get(w, colors[w]) == cu:
                return None
    return newcol


def shift_path_search(adj, colors, v, region, delta):
    """Breadth-first search over color-shift paths starting at v.

    v takes the color of the next path vertex, which passes on the color of
    its successor, and the last vertex takes a free color. States are
    memoized on (vertex, predecessor). Returns the first proper patch found
    in BFS order (shortest first).
    """
    start = (v,)
    q = deque([start])
    seen = {(v, -1)}
    while q:
        path = q.popleft()
        patch = _shift_patch(adj, colors, path, delta)
        if patch is not None:
            return patch
        x = path[-1]
        on_path = set(path)
        for y in adj[x]:
            if y in on_path or y not in region or colors[y] == 0:
                continue
            if (y, x) in seen:
                continue
            # x must be able to take y's color: no other neighbor keeps it
            cy = colors[y]
            if any(colors[w] == cy and w != y and w not in on_path for w in adj[x]):
                continue
            seen.add((y, x))
            q.append(path + (y,))
    return None


def _exhaustive_patch(adj, colors, v, region, delta, node_budget):
    """Backtracking recoloring of the region, boundary colors fixed.

    Value ordering tries each vertex's current color first so that few
    vertices change. Returns the patch of changed vertices or None.
    """
    verts = sorted(region, key=lambda u: (region[u], u))
    inreg = set(verts)
    assign = {}
    nodes = [0]

    def allowed(u):
        bad = set()
        for w in adj[u]:
            if w in inreg:
                if w in assign:
                    bad.add(assign[w])
            elif colors[w]:
                bad.add(colors[w])
        cands = [c for c in range(1, delta + 1) if c not in bad]
        cur = colors[u]
        if cur in cands:
            cands.remove(cur)
            cands.insert(0, cur)
        return cands

    def pick():
        best, best_opts = None, None
        for u in verts:
            if u in assign:
                continue
            opts = allowed(u)
            if best is None or len(opts) < len(best_opts):
                best, best_opts = u, opts
                if not opts:
                    break
        return best, best_opts

    def solve():
        nodes[0] += 1
        if nodes[0] > node_budget:
            return False
        u, opts = pick()
        if u is None:
            return True
        for c in opts:
            assign[u] = c
            if solve():
                return True
            del assign[u]
        return False

    if not solve():
        return None
    return {u: c for u, c in assign.items() if c != colors[u] or u == v}


def find_augmenting_recoloring(g, colors, v, R, delta=None, node_budget=200000, adj=None):
    """Patch coloring the uncolored vertex v, changing colors only inside
    the component of v in B(v, R) ∩ (colored vertices ∪ {v}).

    colors uses 0 for uncolored. Tries shift paths first, then an
    exhaustive recoloring of growing sub-balls. Raises NoPatchInBall.
    """
    delta = g.max_degree if delta is None else delta
    adj = g.adjacency() if adj is None else adj
    cols = colors if isinstance(colors, list) else list(np.asarray(colors).tolist())
    if cols[v]:
        raise ValueError(f"vertex {v} is already colored")
    region = _region(adj, cols, v, R)
    patch = shift_path_search(adj, cols, v, region, delta)
    if patch is not None:
        return RecoloringPatch(patch, v, "shift")
    for r in range(1, R + 1):
        sub = {u: d for u, d in region.items() if d <= r}
        patch = _exhaustive_patch(adj, cols, v, sub, delta, node_budget)
        if patch is not None:
            return RecoloringPatch(patch, v, "exhaustive")
        if len(sub) == len(region):
            break
    raise NoPatchInBall(f"no augmenting recoloring for vertex {v} within radius {R}")


def apply_patch(colors, patch):
    for u, c in patch.changed.items():
        colors[u] = c
    return colors


def _proper_around(adj, colors, verts):
    for u in verts:
        cu = colors[u]
        if cu and any(colors[w] == cu for w in adj[u]):
            return False
    return True


def subexp_brooks(g, f, C=10, delta=None, seed=0, ids=None, growth_radius=None,
                  c_exponent=3, R=None):
    """Δ-coloring of a graph of subexponential growth.

    Raises KCliqueFound, GrowthViolated, NoPatchInBall. The sweep log holds
    one entry per non-empty class: (class index, patches, max patch radius).
    The number of class indices swept is Δ^(2R+2)+1, empty classes included.
    An explicit R skips choose_R.
    """
    t0 = time.perf_counter()
    delta = g.max_degree if delta is None else delta
    if delta < 3:
        raise InfeasibleSpec("subexp_brooks needs Δ >= 3")
    if g.max_degree > delta:
        raise InfeasibleSpec("graph degree exceeds the declared Δ")
    clique = find_kclique(g, delta)
    if clique is not None:
        raise KCliqueFound(f"K_{delta + 1} on vertices {clique}")
    R = choose_R(f, C) if R is None else R
    span = 2 * R + 2
    gc = check_growth(g, f, max_radius=span if growth_radius is None else growth_radius)
    if not gc.passed:
        raise GrowthViolated(f"ball around {gc.witness[0]} at radius {gc.witness[1]} "
                             f"has {gc.ball_size} vertices")
    k = delta ** span + 1
    pw = power(g, span)
    pids = ids if ids is not None else assign_ids(pw, "random_permutation", c_exponent, seed)
    classes, info = greedy_pipeline(pw, pids, pw.n, c_exponent, pw.max_degree)
    if len(classes) and classes.max() > k:
        raise AssertionError("power-graph coloring exceeded the class budget")
    adj = g.adjacency()
    colors = [0] * g.n
    members = {}
    for v, cl in enumerate(classes.tolist()):
        members.setdefault(cl, []).append(v)
    log = []
    for cl in sorted(members):
        patches = []
        base = list(colors)
        for v in members[cl]:
            patches.append(find_augmenting_recoloring(g, base, v, R, delta, adj=adj))
        touched = set()
        for p in patches:
            pv = p.vertices
            if touched & pv:
                raise AssertionError(f"overlapping patches in class {cl}")
            touched |= pv
        for p in patches:
            apply_patch(colors, p)
        if not _proper_around(adj, colors, touched):
            raise AssertionError(f"improper coloring after class {cl}")
        log.append({"class": cl, "patches": len(patches),
                    "max_radius": max(_patch_radius(p, base_dist=None, adj=adj) for p in patches)})
    return BrooksResult(np.asarray(colors, dtype=np.int64), R, k, k, info["rounds"], log,
                        time.perf_counter() - t0)


def _patch_radius(p, base_dist, adj):
    v = p.newly_colored
    targets = set(p.changed)
    dist = {v: 0}
    q = deque([v])
    best = 0
    found = 1 if v in targets else 0
    while q and found < len(targets):
        u = q.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                if w in targets:
                    found += 1
                    best = max(best, dist[w])
                q.append(w)
    return best


def sequential_brooks(g, delta=None):
    """Δ-coloring by greedy plus unbounded-radius augmenting recolorings."""
    delta = g.max_degree if delta is None else delta
    adj = g.adjacency()
    if delta <= 2:
        if g.max_degree > delta:
            raise InfeasibleSpec("graph degree exceeds the declared Δ")
        clique = find_kclique(g, delta) if delta < 2 else None
        if clique is not None:
            raise KCliqueFound(f"K_{delta + 1} on vertices {clique}")
        colors = [0] * g.n
        for s in range(g.n):
            if colors[s]:
                continue
            colors[s] = 1
            q = deque([s])
            while q:
                u = q.popleft()
                for w in adj[u]:
                    if not colors[w]:
                        colors[w] = 3 - colors[u]
                        q.append(w)
                    elif colors[w] == colors[u]:
                        raise OddCycleWithDeltaTwo("graph has an odd cycle")
        if delta == 0 and g.n:
            raise KCliqueFound("K_1 needs one color")
        return np.asarray(colors, dtype=np.int64)
    clique = find_kclique(g, delta)
    if clique is not None:
        raise KCliqueFound(f"K_{delta + 1} on vertices {clique}")
    colors = [0] * g.n
    for v in range(g.n):
        c = _free_color(adj, colors, {}, v, delta)
        if c:
            colors[v] = c
            continue
        p = find_augmenting_recoloring(g, colors, v, g.n, delta, adj=adj)
        apply_patch(colors, p)
    return np.asarray(colors, dtype=np.int64)
