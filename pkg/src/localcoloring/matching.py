"""Matchings, augmenting paths, flips and stage-wise elimination.

The length of an augmenting path is its number of vertices, so every
augmenting path has even length and a single free edge has length 2.
"""
from collections import deque
from dataclasses import dataclass, field

from .errors import NotAugmenting


class Matching:
    def __init__(self, g, edges=()):
        self.g = g
        self.mate = [-1] * g.n
        for u, v in edges:
            if self.mate[u] >= 0 or self.mate[v] >= 0:
                raise ValueError(f"edge ({u}, {v}) touches a matched vertex")
            if not g.has_edge(u, v):
                raise ValueError(f"({u}, {v}) is not an edge")
            self.mate[u] = v
            self.mate[v] = u

    def copy(self):
        m = Matching(self.g)
        m.mate = list(self.mate)
        return m

    @property
    def edges(self):
        return sorted((u, v) for u, v in enumerate(self.mate) if u < v)

    @property
    def unmatched(self):
        return [v for v, m in enumerate(self.mate) if m < 0]

    def covered(self):
        return {v for v, m in enumerate(self.mate) if m >= 0}

    def __len__(self):
        return sum(1 for m in self.mate if m >= 0) // 2

    def is_valid(self):
        for u, v in enumerate(self.mate):
            if v >= 0 and (self.mate[v] != u or not self.g.has_edge(u, v)):
                return False
        return True


def maximal_matching(g, order=None):
    """Greedy scan over edges (edge ids in the given order)."""
    m = Matching(g)
    el = g.edge_list()
    for e in (range(g.m) if order is None else order):
        u, v = el[int(e)]
        if m.mate[u] < 0 and m.mate[v] < 0:
            m.mate[u] = v
            m.mate[v] = u
    return m


def is_augmenting_path(M, P):
    P = list(P)
    if len(P) < 2 or len(P) % 2 or len(set(P)) != len(P):
        return False
    if M.mate[P[0]] >= 0 or M.mate[P[-1]] >= 0:
        return False
    for i in range(len(P) - 1):
        if not M.g.has_edge(P[i], P[i + 1]):
            return False
        matched = M.mate[P[i]] == P[i + 1]
        if matched != (i % 2 == 1):
            return False
    return True


def flip(M, P):
    """Swap matched and unmatched edges along the augmenting path P."""
    if not is_augmenting_path(M, P):
        raise NotAugmenting("path is not augmenting")
    out = M.copy()
    for i in range(0, len(P), 2):
        u, v = P[i], P[i + 1]
        out.mate[u] = v
        out.mate[v] = u
    return out


def bipartition(g):
    """Side per vertex (0/1) if g is bipartite, else None."""
    side = [-1] * g.n
    adj = g.adjacency()
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for w in adj[u]:
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    q.append(w)
                elif side[w] == side[u]:
                    return None
    return side


def _bipartite_shortest(g, M, side, max_len, adj):
    # alternating BFS from all free vertices of side 0 (exact on bipartite graphs)
    parent = {}
    layer = {}
    q = deque()
    for s in range(g.n):
        if side[s] == 0 and M.mate[s] < 0:
            layer[s] = 1
            parent[s] = -1
            q.append(s)
    best_len = None
    ends = []
    while q:
        u = q.popleft()
        lu = layer[u]
        if best_len is not None and lu >= best_len:
            break
        for w in adj[u]:
            if w in layer or M.mate[u] == w:
                continue
            layer[w] = lu + 1
            parent[w] = u
            if M.mate[w] < 0:
                if lu + 1 < max_len:
                    best_len = lu + 1
                    ends.append(w)
                continue
            x = M.mate[w]
            if x not in layer and lu + 2 < max_len:
                layer[x] = lu + 2
                parent[x] = w
                q.append(x)
    if not ends:
        return None
    paths = []
    for w in ends:
        path = [w]
        while parent[path[-1]] >= 0:
            path.append(parent[path[-1]])
        path.reverse()
        paths.append(path)
    return min(paths, key=lambda p: (min(p[0], p[-1]), max(p[0], p[-1]), p))


def _dfs_shortest(g, M, max_len, adj):
    # iterative deepening over simple alternating paths (exact, exponential)
    free = [v for v in range(g.n) if M.mate[v] < 0]
    for L in range(2, max_len, 2):
        found = []
        for s in free:
            path = [s]
            on = {s}

            def rec():
                u = path[-1]
                if len(path) % 2 == 1:
                    for w in adj[u]:
                        if w in on or M.mate[u] == w:
                            continue
                        if len(path) + 1 == L:
                            if M.mate[w] < 0 and w > s:
                                found.append(path + [w])
                            continue
                        x = M.mate[w]
                        if x < 0 or x in on:
                            continue
                        path.extend([w, x])
                        on.update((w, x))
                        rec()
                        path.pop()
                        path.pop()
                        on.discard(w)
                        on.discard(x)

            rec()
            if found:
                break
        if found:
            return min(found, key=lambda p: (min(p[0], p[-1]), max(p[0], p[-1]), p))
    return None


def find_aug_path(g, M, max_len, side=None):
    """A shortest augmenting path with fewer than max_len vertices, or None.

    Bipartite graphs use an alternating BFS; other graphs use an exhaustive
    iterative-deepening search. Ties go to the least endpoint.
    """
    if max_len <= 2:
        return None
    adj = g.adjacency()
    if side is None:
        side = bipartition(g)
    if side is not None:
        return _bipartite_shortest(g, M, side, max_len, adj)
    return _dfs_shortest(g, M, max_len, adj)


@dataclass
class StageLog:
    k: int
    flips: int
    unmatched: int
    history: list = field(default_factory=list)


def stage_eliminate(g, M, k, log=None):
    """Flip shortest augmenting paths of length < k until none remain."""
    side = bipartition(g)
    cur = M.copy()
    flips = 0
    while True:
        P = find_aug_path(g, cur, k, side)
        if P is None:
            break
        before = cur.covered()
        cur = flip(cur, P)
        # flipping never uncovers a vertex
        assert before <= cur.covered()
        flips += 1
    if log is not None:
        log.append(StageLog(k, flips, len(cur.unmatched)))
    return cur


def doubling_stages(g, M=None, k0=2, k_max=None):
    """Run stage_eliminate with k = k0, 2k0, 4k0, ... until U_M is empty
    or k exceeds k_max (default n + 2). Returns (matching, stage logs)."""
    M = Matching(g) if M is None else M
    k_max = g.n + 2 if k_max is None else k_max
    logs = []
    k = k0
    while True:
        M = stage_eliminate(g, M, k, logs)
        if not M.unmatched or k > k_max:
            return M, logs
        k *= 2
