"""Finite labeling games on rooted regular trees and transfer experiments.

In the game G(v, i) the root of the depth-r Δ-regular tree carries label
v. Round n labels the vertices at depth n: in round 1 player I labels one
root neighbor and II labels the others; afterwards I labels the new layer
of her side (the subtree of her first vertex) and then II labels the rest.
Labels must form a homomorphism into H at every step (in the edge-labeled
variant, one that also preserves edge labels; the edge to I's first vertex
carries label i). I wins iff the algorithm maps the final labeled ball to a
color other than i.

Labeled trees are canonicalized as (label, sorted child canons), with a
child canon being (edge label, subtree canon) in the edge-labeled variant.
"""
import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import (AlgorithmUndefinedAtTerminal, BudgetExhausted, NoWinningIndex,
                     NotAHomomorphism)
from .graph import EdgeLabeledGraph, Graph, ball, gen_graph, girth, union_labeled

PLAIN, EDGE_LABELED, ID_LABELS = "plain", "edge_labeled", "id_labels"


# ---------------------------------------------------------------- targets

class Target:
    """Adjacency view of H; neighbor lists by edge label when labeled."""

    def __init__(self, H):
        if isinstance(H, EdgeLabeledGraph):
            self.labeled = H
            g = H.graph
            self.num_labels = H.num_labels
        else:
            self.labeled = None
            g = H
            self.num_labels = 0
        self.graph = g
        self.n = g.n
        self.adj = g.adjacency()
        self.by_label = None
        if self.labeled is not None:
            self.by_label = [dict() for _ in range(g.n)]
            for e, (u, v) in enumerate(g.edge_list()):
                lab = int(H.labels[e])
                self.by_label[u].setdefault(lab, []).append(v)
                self.by_label[v].setdefault(lab, []).append(u)

    def options(self, parent_label, edge_label=None):
        if edge_label is None:
            return self.adj[parent_label]
        return self.by_label[parent_label].get(edge_label, [])

    def edge_label(self, u, v):
        return self.labeled.label(u, v)


# ---------------------------------------------------------------- GLOCAL algorithms

class GlocalAlgorithm:
    """Partial map from canonical labeled rooted trees (radius <= r) to colors.

    Built from a table, a function of the canon, or a 0-round vertex
    coloring of H. Calling it returns None where undefined.
    """

    def __init__(self, r, table=None, func=None, name="table"):
        self.r = r
        self.table = dict(table or {})
        self.func = func
        self.name = name

    def __call__(self, canon):
        if canon in self.table:
            return self.table[canon]
        if self.func is not None:
            return self.func(canon)
        return None

    @classmethod
    def zero_round(cls, coloring, r=0):
        """Color of the root's label, ignoring the rest of the ball."""
        col = list(coloring)
        return cls(r, func=lambda canon: col[canon[0]], name="zero_round")

    @classmethod
    def constant(cls, color, r=0):
        return cls(r, func=lambda canon: color, name=f"constant_{color}")


# ---------------------------------------------------------------- trees

@dataclass
class TreeNode:
    depth: int
    parent: int
    edge_label: int  # label of the edge to the parent (0 if unlabeled/root)
    side: int  # 0 root, 1 player I, 2 player II
    children: list = field(default_factory=list)


def build_tree(delta, r, first_edge_label=None, edge_labeled=False):
    """Nodes of the depth-r Δ-regular tree in BFS order; node 0 is the root.

    With edge labels, the root's child 0 gets first_edge_label, the other root
    edges the remaining labels in order, and every other vertex gives its
    children the labels other than its parent edge's label.
    """
    nodes = [TreeNode(0, -1, 0, 0)]
    frontier = [0]
    for depth in range(1, r + 1):
        nxt = []
        for p in frontier:
            par = nodes[p]
            if depth == 1:
                if edge_labeled:
                    labs = [first_edge_label] + [l for l in range(1, delta + 1)
                                                 if l != first_edge_label]
                else:
                    labs = [0] * delta
            else:
                labs = ([l for l in range(1, delta + 1) if l != par.edge_label]
                        if edge_labeled else [0] * (delta - 1))
            for j, lab in enumerate(labs):
                side = (1 if j == 0 else 2) if depth == 1 else par.side
                nodes.append(TreeNode(depth, p, lab, side))
                par.children.append(len(nodes) - 1)
                nxt.append(len(nodes) - 1)
        frontier = nxt
    return nodes


def canon_of(nodes, labels, u=0):
    """Canonical form of the labeled subtree at u (unlabeled vertices as None)."""
    kids = []
    for c in nodes[u].children:
        sub = canon_of(nodes, labels, c)
        kids.append((nodes[c].edge_label, sub) if nodes[c].edge_label else sub)
    return (labels[u], tuple(sorted(kids, key=repr)))


def _position_key(nodes, labels, stage):
    root = nodes[0]
    if not root.children:
        return (stage, labels[0])
    first = root.children[0]
    i_side = canon_of(nodes, labels, first)
    ii_side = tuple(sorted((canon_of(nodes, labels, c) for c in root.children[1:]), key=repr))
    return (stage, labels[0], nodes[first].edge_label, i_side, ii_side)


# ---------------------------------------------------------------- game spec / solver

@dataclass
class GameSpec:
    target: object  # Graph or EdgeLabeledGraph
    delta: int
    r: int
    v: int
    i: int
    alg: GlocalAlgorithm
    variant: str = PLAIN


@dataclass
class Winner:
    who: str  # "I" or "II"
    strategy: dict  # position key -> chosen labeling (tuple of node labels)
    positions: int = 0


def _stages(nodes, r):
    """Move schedule: list of (player, node ids) per move."""
    out = []
    for depth in range(1, r + 1):
        for side in (1, 2):
            ids = [k for k, nd in enumerate(nodes) if nd.depth == depth and nd.side == side]
            if ids:
                out.append(("I" if side == 1 else "II", ids))
    return out


def _moves(T, nodes, labels, ids, variant, edge_labeled):
    """All labelings of the node set ids extending labels (deduplicated)."""
    opts = []
    for k in ids:
        nd = nodes[k]
        cands = T.options(labels[nd.parent], nd.edge_label if edge_labeled else None)
        if variant == ID_LABELS:
            used = set(l for l in labels if l is not None)
            cands = [c for c in cands if c not in used]
        opts.append(cands)
    seen = set()
    for combo in itertools.product(*opts):
        if variant == ID_LABELS and len(set(combo)) < len(combo):
            continue
        new = list(labels)
        for k, lab in zip(ids, combo):
            new[k] = lab
        yield tuple(combo), new, seen


def _terminal(spec, nodes, labels):
    color = spec.alg(canon_of(nodes, labels))
    if color is None:
        raise AlgorithmUndefinedAtTerminal(
            f"algorithm undefined on terminal ball {canon_of(nodes, labels)}")
    return color != spec.i


def solve_game(spec, budget=10 ** 6):
    """Backward induction with memoization over canonical positions.

    A player with no legal move loses. Returns the Winner with the winning
    player's move table.
    """
    T = Target(spec.target)
    edge_labeled = spec.variant == EDGE_LABELED
    if edge_labeled:
        if T.labeled is None:
            raise ValueError("edge_labeled variant needs an EdgeLabeledGraph")
        if not T.labeled.nice:
            raise ValueError("edge labeling of the target is not nice")
    if not 1 <= spec.i <= spec.delta:
        raise ValueError("i must lie in 1..Δ")
    nodes = build_tree(spec.delta, spec.r, spec.i if edge_labeled else None, edge_labeled)
    stages = _stages(nodes, spec.r)
    memo = {}
    strategy = {}

    def value(labels, s):
        # True iff player I wins from here
        key = _position_key(nodes, labels, s)
        if key in memo:
            return memo[key]
        if len(memo) >= budget:
            raise BudgetExhausted(f"more than {budget} positions")
        if s == len(stages):
            res = _terminal(spec, nodes, labels)
        else:
            player, ids = stages[s]
            want = player == "I"
            res = not want
            seen = set()
            for combo, new, _ in _moves(T, nodes, labels, ids, spec.variant, edge_labeled):
                ck = _position_key(nodes, new, s + 1)
                if ck in seen:
                    continue
                seen.add(ck)
                if value(new, s + 1) == want:
                    res = want
                    strategy[key] = combo
                    break
        memo[key] = res
        return res

    labels = [None] * len(nodes)
    labels[0] = spec.v
    i_wins = value(labels, 0)
    who = "I" if i_wins else "II"
    table = {}
    for key, combo in strategy.items():
        player = "I" if key[0] < len(stages) and stages[key[0]][0] == "I" else "II"
        if player == who:
            table[key] = combo
    return Winner(who, table, len(memo))


def replay_strategy(spec, winner):
    """Check the winner's strategy against every opposing line of play."""
    T = Target(spec.target)
    edge_labeled = spec.variant == EDGE_LABELED
    nodes = build_tree(spec.delta, spec.r, spec.i if edge_labeled else None, edge_labeled)
    stages = _stages(nodes, spec.r)
    me = winner.who

    def walk(labels, s):
        if s == len(stages):
            return _terminal(spec, nodes, labels) == (me == "I")
        player, ids = stages[s]
        key = _position_key(nodes, labels, s)
        moves = list(_moves(T, nodes, labels, ids, spec.variant, edge_labeled))
        if player == me:
            if not moves:
                return False
            combo = winner.strategy.get(key)
            if combo is None:
                return False
            new = list(labels)
            for k, lab in zip(ids, combo):
                new[k] = lab
            return walk(new, s + 1)
        if not moves:
            return True
        return all(walk(new, s + 1) for _, new, _ in moves)

    labels = [None] * len(nodes)
    labels[0] = spec.v
    return walk(labels, 0)


def win_matrix(H, delta, r, alg, variant=PLAIN, budget=10 ** 6):
    """Winner per (v, i) as a dict."""
    n = H.graph.n if isinstance(H, EdgeLabeledGraph) else H.n
    return {(v, i): solve_game(GameSpec(H, delta, r, v, i, alg, variant), budget).who
            for v in range(n) for i in range(1, delta + 1)}


def extract_coloring(H, delta, r, alg, variant=PLAIN, budget=10 ** 6):
    """c(v) = least i such that II wins G(v, i)."""
    n = H.graph.n if isinstance(H, EdgeLabeledGraph) else H.n
    out = []
    for v in range(n):
        for i in range(1, delta + 1):
            if solve_game(GameSpec(H, delta, r, v, i, alg, variant), budget).who == "II":
                out.append(i)
                break
        else:
            raise NoWinningIndex(f"I wins every game at vertex {v}")
    return out


# ---------------------------------------------------------------- edge-labeled colorings

def is_el_coloring(H, c):
    """No edge (v, w) with c(v) = c(w) = label(v, w)."""
    g = H.graph
    for e, (u, v) in enumerate(g.edge_list()):
        if c[u] == c[v] == int(H.labels[e]):
            return False
    return True


def chi_el_decide(H, delta, budget=10 ** 7):
    """(True, witness) iff some c: V -> 1..Δ is an edge-labeled coloring."""
    g = H.graph
    n = g.n
    nbrs = [[] for _ in range(n)]
    for e, (u, v) in enumerate(g.edge_list()):
        lab = int(H.labels[e])
        nbrs[u].append((v, lab))
        nbrs[v].append((u, lab))
    # forbidden[v][c] counts assigned neighbors that rule out color c at v
    forbidden = [[0] * (delta + 1) for _ in range(n)]
    color = [0] * n
    nodes = [0]

    def choose():
        best, best_free = -1, None
        for v in range(n):
            if color[v]:
                continue
            free = [c for c in range(1, delta + 1) if not forbidden[v][c]]
            if best < 0 or len(free) < len(best_free):
                best, best_free = v, free
                if len(free) <= 1:
                    break
        return best, best_free

    def solve():
        nodes[0] += 1
        if nodes[0] > budget:
            raise BudgetExhausted(f"more than {budget} search nodes")
        v, free = choose()
        if v < 0:
            return True
        for c in free:
            color[v] = c
            touched = [w for w, lab in nbrs[v] if lab == c]
            for w in touched:
                forbidden[w][c] += 1
            if all(color[w] or any(not forbidden[w][x] for x in range(1, delta + 1))
                   for w in touched) and solve():
                return True
            for w in touched:
                forbidden[w][c] -= 1
            color[v] = 0
        return False

    if solve():
        return True, list(color)
    return False, None


# ---------------------------------------------------------------- GLOCAL existence

def _branches(T, label, depth, delta, memo):
    """Canons of depth-`depth` branches hanging below a vertex labeled `label`."""
    key = (label, depth)
    if key in memo:
        return memo[key]
    if depth == 0:
        out = [(label, ())]
    else:
        child_opts = []
        for c in T.adj[label]:
            child_opts.extend(_branches(T, c, depth - 1, delta, memo))
        child_opts = sorted(set(child_opts), key=repr)
        out = [(label, tuple(sorted(m, key=repr)))
               for m in itertools.combinations_with_replacement(child_opts, delta - 1)]
    memo[key] = out
    return out


def _truncate(canon, depth):
    label, kids = canon
    if depth == 0:
        return (label, ())
    return (label, tuple(sorted((_truncate(k, depth - 1) for k in kids), key=repr)))


def ball_class_graph(H, delta, r):
    """Class graph of full labeled r-balls of Hom(T^{r+1}_Δ, H).

    Nodes are canonical balls (label, sorted Δ branches of depth r-1); two
    balls are adjacent when they occur at a root and a child of one labeled
    (r+1)-ball. Returns (classes, edge set).
    """
    T = Target(H)
    memo = {}
    classes = set()
    edges = set()
    for x in range(T.n):
        for y in T.adj[x]:
            if r == 0:
                X, Y = (x, ()), (y, ())
                classes.update([X, Y])
                edges.add((min(X, Y, key=repr), max(X, Y, key=repr)) if X != Y else (X, Y))
                continue
            others_opts = []
            for w in T.adj[x]:
                others_opts.extend(_branches(T, w, r - 1, delta, memo))
            others_opts = sorted(set(others_opts), key=repr)
            for By in _branches(T, y, r, delta, memo):
                for others in itertools.combinations_with_replacement(others_opts, delta - 1):
                    X = (x, tuple(sorted([_truncate(By, r - 1)] + list(others), key=repr)))
                    xb = (x, tuple(sorted((_truncate(o, r - 2) for o in others), key=repr))) \
                        if r >= 2 else (x, ())
                    Y = (y, tuple(sorted(list(By[1]) + [xb], key=repr)))
                    classes.update([X, Y])
                    a, b = sorted([X, Y], key=repr)
                    edges.add((a, b))
    return classes, edges


def _dsatur_color(nodes, adj, k, budget):
    order_nodes = list(nodes)
    color = {}
    count = [0]

    def sat(u):
        return len({color[w] for w in adj[u] if w in color})

    def solve():
        count[0] += 1
        if count[0] > budget:
            raise BudgetExhausted(f"more than {budget} search nodes")
        best, best_key = None, None
        for u in order_nodes:
            if u in color:
                continue
            key = (sat(u), len(adj[u]))
            if best is None or key > best_key:
                best, best_key = u, key
        if best is None:
            return True
        used = {color[w] for w in adj[best] if w in color}
        top = max(color.values(), default=0)
        for c in range(1, min(k, top + 1) + 1):  # symmetry breaking on new colors
            if c in used:
                continue
            color[best] = c
            if solve():
                return True
            del color[best]
        return False

    return dict(color) if solve() else None


def find_glocal_coloring(H, delta, r, budget=10 ** 6):
    """An r-round GLOCAL algorithm Δ-coloring Hom(T^{r+1}_Δ, H), or None."""
    classes, edges = ball_class_graph(H, delta, r)
    adj = {c: set() for c in classes}
    for a, b in edges:
        if a == b:
            return None  # a ball adjacent to an identical ball cannot be colored
        adj[a].add(b)
        adj[b].add(a)
    col = _dsatur_color(sorted(classes, key=repr), adj, delta, budget)
    if col is None:
        return None
    return GlocalAlgorithm(r, table=col, name=f"glocal_r{r}")


def glocal_exists(H, delta, r, budget=10 ** 6):
    return find_glocal_coloring(H, delta, r, budget) is not None


# ---------------------------------------------------------------- ID graphs

@dataclass
class IdGraphCertificate:
    graph: EdgeLabeledGraph
    girth: float
    chi_el_le_delta: bool
    attempts: int


def id_graph_search(n, num_labels, d, girth_min, seed, retries=100, chi_budget=10 ** 7):
    """Union of num_labels seeded random d-regular graphs, accepted iff its
    girth exceeds girth_min and χ^el > num_labels. Returns a certificate or
    None."""
    if (n * d) % 2:
        raise ValueError("n·d must be even")
    ss = np.random.SeedSequence(seed)
    for attempt in range(1, retries + 1):
        child = ss.spawn(1)[0]
        seeds = child.generate_state(num_labels)
        parts = [gen_graph("random_regular", n=n, d=d, seed=int(s)) for s in seeds]
        used = set()
        clash = False
        for p in parts:
            es = set(p.edge_list())
            if es & used:
                clash = True
                break
            used |= es
        if clash:
            continue
        H = union_labeled(parts)
        gval = girth(H.graph)
        if gval <= girth_min:
            continue
        ok, _ = chi_el_decide(H, num_labels, chi_budget)
        if not ok:
            return IdGraphCertificate(H, gval, False, attempt)
    return None


# ---------------------------------------------------------------- injectivity

def tree_fragment(delta, depth):
    """The depth-`depth` ball of the properly Δ-edge-colored Δ-regular tree,
    as an EdgeLabeledGraph (root 0, children of the root labeled 1..Δ)."""
    nodes = build_tree(delta, depth, 1, edge_labeled=True)
    edges = [(nd.parent, k) for k, nd in enumerate(nodes) if k]
    g = Graph(len(nodes), edges)
    lab = np.zeros(g.m, dtype=np.int64)
    for k, nd in enumerate(nodes):
        if k:
            lab[g.edge_id(nd.parent, k)] = nd.edge_label
    return EdgeLabeledGraph(g, lab, delta)


def label_homomorphisms(F, H, root_label=None, limit=10 ** 6):
    """All edge-label-preserving homomorphisms from the tree fragment F to H."""
    T = Target(H)
    g = F.graph
    adj = g.adjacency()
    order = [0]
    parent = {0: -1}
    for u in order:
        for w in adj[u]:
            if w not in parent:
                parent[w] = u
                order.append(w)
    roots = range(T.n) if root_label is None else [root_label]
    out = []
    lab = [None] * g.n

    def rec(idx):
        if len(out) >= limit:
            return
        if idx == len(order):
            out.append(list(lab))
            return
        u = order[idx]
        p = parent[u]
        for c in T.options(lab[p], F.label(p, u)):
            lab[u] = c
            rec(idx + 1)
        lab[u] = None

    for r0 in roots:
        lab[0] = r0
        rec(1)
    return out


def check_local_injectivity(labeling, F, H, k):
    """True iff the labeling of the fragment F is injective on every
    (k+1)-ball of F. Raises NotAHomomorphism unless it preserves adjacency
    and edge labels."""
    T = Target(H)
    g = F.graph
    lab = list(labeling)
    for e, (u, v) in enumerate(g.edge_list()):
        a, b = lab[u], lab[v]
        if not T.graph.has_edge(a, b):
            raise NotAHomomorphism(f"edge ({u}, {v}) maps to non-edge ({a}, {b})")
        if T.labeled is not None and int(F.labels[e]) != T.edge_label(a, b):
            raise NotAHomomorphism(f"edge ({u}, {v}) changes its label")
    for u in range(g.n):
        verts = ball(g, u, k + 1).vertices
        if len({lab[w] for w in verts}) < len(verts):
            return False
    return True
