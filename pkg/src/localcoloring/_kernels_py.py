"""Pure-Python implementations of the hot graph kernels.

Every function mirrors the signature of the compiled module exactly and
takes CSR arrays (indptr int64, indices int32) with sorted rows.
"""
from collections import deque

import numpy as np


def bfs_layers(indptr, indices, source, max_depth):
    """BFS from source up to max_depth (negative = unbounded).

    Returns (order, dist) arrays: visited vertices in BFS order and their
    distances.
    """
    ip = indptr.tolist() if hasattr(indptr, "tolist") else indptr
    ix = indices.tolist() if hasattr(indices, "tolist") else indices
    dist = {source: 0}
    order = [source]
    head = 0
    while head < len(order):
        u = order[head]
        head += 1
        du = dist[u]
        if max_depth >= 0 and du >= max_depth:
            continue
        for j in range(ip[u], ip[u + 1]):
            w = ix[j]
            if w not in dist:
                dist[w] = du + 1
                order.append(w)
    return (np.asarray(order, dtype=np.int64),
            np.asarray([dist[u] for u in order], dtype=np.int64))


def bfs_full_order(indptr, indices, root):
    """BFS order over all components, starting at root then lowest unvisited."""
    ip = indptr.tolist()
    ix = indices.tolist()
    n = len(ip) - 1
    seen = [False] * n
    order = []
    starts = [root] + list(range(n)) if n else []
    for s in starts:
        if seen[s]:
            continue
        seen[s] = True
        q = deque([s])
        while q:
            u = q.popleft()
            order.append(u)
            for j in range(ip[u], ip[u + 1]):
                w = ix[j]
                if not seen[w]:
                    seen[w] = True
                    q.append(w)
    return np.asarray(order, dtype=np.int64)


def power_csr(indptr, indices, k):
    ip = indptr.tolist()
    ix = indices.tolist()
    n = len(ip) - 1
    new_ptr = [0]
    new_idx = []
    for v in range(n):
        seen = {v}
        frontier = [v]
        for _ in range(k):
            nxt = []
            for u in frontier:
                for j in range(ip[u], ip[u + 1]):
                    w = ix[j]
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            if not nxt:
                break
            frontier = nxt
        seen.discard(v)
        new_idx.extend(sorted(seen))
        new_ptr.append(len(new_idx))
    return np.asarray(new_ptr, dtype=np.int64), np.asarray(new_idx, dtype=np.int32)


def cv_step(indptr, nbr_order, colors, L, delta):
    """One Cole-Vishkin round on int64 colors (1-based).

    nbr_order lists, per CSR row, neighbors in the canonical (ID) order.
    Returns (new_colors, status): status 0 ok, 1 improper input, 2 degree
    above delta.
    """
    ip = indptr.tolist()
    nb = nbr_order.tolist()
    col = colors.tolist()
    n = len(ip) - 1
    base = 2 * L
    out = [0] * n
    for v in range(n):
        cv = col[v] - 1
        code = 0
        mult = 1
        cnt = 0
        last = 0
        for j in range(ip[v], ip[v + 1]):
            x = cv ^ (col[nb[j]] - 1)
            if x == 0:
                return np.asarray(out, dtype=np.int64), 1
            pos = (x & -x).bit_length() - 1
            last = 2 * pos + ((cv >> pos) & 1)
            code += last * mult
            mult *= base
            cnt += 1
        if cnt > delta:
            return np.asarray(out, dtype=np.int64), 2
        if cnt == 0:
            out[v] = 1
            continue
        while cnt < delta:
            code += last * mult
            mult *= base
            cnt += 1
        out[v] = code + 1
    return np.asarray(out, dtype=np.int64), 0


def greedy_sweep(indptr, indices, order, colors, palette):
    """Sequential greedy over `order`, in place on a copy of colors.

    Already-colored vertices (nonzero) are fixed. Returns (colors, bad)
    where bad is the first vertex with no free color in 1..palette, or -1.
    """
    ip = indptr.tolist()
    ix = indices.tolist()
    col = colors.tolist()
    for v in order.tolist():
        used = {col[ix[j]] for j in range(ip[v], ip[v + 1])}
        c = 1
        while c in used:
            c += 1
        if c > palette:
            return np.asarray(col, dtype=np.int64), v
        col[v] = c
    return np.asarray(col, dtype=np.int64), -1


def girth(indptr, indices):
    """Length of the shortest cycle, 0 if the graph is a forest."""
    ip = indptr.tolist()
    ix = indices.tolist()
    n = len(ip) - 1
    best = 0
    for s in range(n):
        dist = {s: 0}
        parent = {s: -1}
        q = deque([s])
        while q:
            u = q.popleft()
            du = dist[u]
            if best and 2 * du + 1 >= best:
                break
            for j in range(ip[u], ip[u + 1]):
                w = ix[j]
                if w not in dist:
                    dist[w] = du + 1
                    parent[w] = u
                    q.append(w)
                elif w != parent[u]:
                    cyc = du + dist[w] + 1
                    if best == 0 or cyc < best:
                        best = cyc
    return best


def growth_violation(indptr, indices, ftab):
    """First (v, r) with |B(v, r)| >= ftab[r], scanning r up to len(ftab)-1.

    Returns (-1, -1, 0) when every ball is small enough, else (v, r, size).
    """
    ip = indptr.tolist()
    ix = indices.tolist()
    ft = ftab.tolist()
    n = len(ip) - 1
    rmax = len(ft) - 1
    for v in range(n):
        seen = {v}
        frontier = [v]
        size = 1
        for r in range(rmax + 1):
            if size >= ft[r]:
                return v, r, size
            if not frontier:
                break
            nxt = []
            for u in frontier:
                for j in range(ip[u], ip[u + 1]):
                    w = ix[j]
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
            size += len(nxt)
    return -1, -1, 0
