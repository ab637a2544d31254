# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot graph kernels (see _kernels_py)."""
import numpy as np
cimport numpy as cnp
from libc.stdlib cimport qsort

cnp.import_array()

ctypedef cnp.int64_t i64
ctypedef cnp.int32_t i32


cdef int _cmp_i32(const void *a, const void *b) noexcept nogil:
    cdef i32 x = (<i32 *>a)[0]
    cdef i32 y = (<i32 *>b)[0]
    return (x > y) - (x < y)


def bfs_layers(const i64[:] indptr, const i32[:] indices, i64 source, i64 max_depth):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef i64[:] dist = np.full(n, -1, dtype=np.int64)
    cdef i64[:] order = np.empty(n, dtype=np.int64)
    cdef Py_ssize_t head = 0, tail = 0, j
    cdef i64 u, w, du
    dist[source] = 0
    order[tail] = source
    tail += 1
    while head < tail:
        u = order[head]
        head += 1
        du = dist[u]
        if max_depth >= 0 and du >= max_depth:
            continue
        for j in range(indptr[u], indptr[u + 1]):
            w = indices[j]
            if dist[w] < 0:
                dist[w] = du + 1
                order[tail] = w
                tail += 1
    out_order = np.asarray(order[:tail]).copy()
    return out_order, np.asarray(dist)[out_order]


def bfs_full_order(const i64[:] indptr, const i32[:] indices, i64 root):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef cnp.uint8_t[:] seen = np.zeros(n, dtype=np.uint8)
    cdef i64[:] order = np.empty(n, dtype=np.int64)
    cdef Py_ssize_t head = 0, tail = 0, j, s
    cdef i64 u, w
    if n == 0:
        return np.asarray(order)
    for s in range(-1, n):
        u = root if s < 0 else s
        if seen[u]:
            continue
        seen[u] = 1
        order[tail] = u
        tail += 1
        while head < tail:
            u = order[head]
            head += 1
            for j in range(indptr[u], indptr[u + 1]):
                w = indices[j]
                if not seen[w]:
                    seen[w] = 1
                    order[tail] = w
                    tail += 1
    return np.asarray(order)


def power_csr(const i64[:] indptr, const i32[:] indices, i64 k):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef i64[:] stamp = np.full(n, -1, dtype=np.int64)
    cdef i64[:] depth = np.zeros(n, dtype=np.int64)
    cdef i32[:] queue = np.empty(max(n, 1), dtype=np.int32)
    cdef i64[:] new_ptr = np.zeros(n + 1, dtype=np.int64)
    cdef Py_ssize_t v, head, tail, j, p
    cdef i64 u, w, total = 0
    cdef int npass
    cdef i32[:] new_idx = np.empty(0, dtype=np.int32)
    for npass in range(2):
        for v in range(n):
            stamp[v] = -1
        for v in range(n):
            head = 0
            tail = 0
            queue[tail] = v
            tail += 1
            stamp[v] = v + npass * n
            depth[v] = 0
            while head < tail:
                u = queue[head]
                head += 1
                if depth[u] >= k:
                    continue
                for j in range(indptr[u], indptr[u + 1]):
                    w = indices[j]
                    if stamp[w] != v + npass * n:
                        stamp[w] = v + npass * n
                        depth[w] = depth[u] + 1
                        queue[tail] = w
                        tail += 1
            if npass == 0:
                new_ptr[v + 1] = new_ptr[v] + tail - 1
            else:
                p = new_ptr[v]
                for j in range(1, tail):
                    new_idx[p] = queue[j]
                    p += 1
                if tail > 2:
                    qsort(&new_idx[new_ptr[v]], tail - 1, sizeof(i32), _cmp_i32)
        if npass == 0:
            total = new_ptr[n]
            new_idx = np.empty(total, dtype=np.int32)
    return np.asarray(new_ptr), np.asarray(new_idx)


def cv_step(const i64[:] indptr, const i32[:] nbr_order, const i64[:] colors, i64 L, i64 delta):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef i64[:] out = np.zeros(n, dtype=np.int64)
    cdef Py_ssize_t v, j
    cdef i64 cv, x, code, mult, cnt, last, pos, base = 2 * L
    for v in range(n):
        cv = colors[v] - 1
        code = 0
        mult = 1
        cnt = 0
        last = 0
        for j in range(indptr[v], indptr[v + 1]):
            x = cv ^ (colors[nbr_order[j]] - 1)
            if x == 0:
                return np.asarray(out), 1
            pos = 0
            while not ((x >> pos) & 1):
                pos += 1
            last = 2 * pos + ((cv >> pos) & 1)
            code += last * mult
            mult *= base
            cnt += 1
        if cnt > delta:
            return np.asarray(out), 2
        if cnt == 0:
            out[v] = 1
            continue
        while cnt < delta:
            code += last * mult
            mult *= base
            cnt += 1
        out[v] = code + 1
    return np.asarray(out), 0


def greedy_sweep(const i64[:] indptr, const i32[:] indices, const i64[:] order,
                 const i64[:] colors, i64 palette):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef i64[:] col = np.array(colors, dtype=np.int64)
    cdef i64[:] mark = np.full(palette + 2, -1, dtype=np.int64)
    cdef Py_ssize_t t, j
    cdef i64 v, c, w
    for t in range(order.shape[0]):
        v = order[t]
        for j in range(indptr[v], indptr[v + 1]):
            c = col[indices[j]]
            if 0 < c <= palette:
                mark[c] = v
        c = 1
        while c <= palette and mark[c] == v:
            c += 1
        if c > palette:
            return np.asarray(col), v
        col[v] = c
    return np.asarray(col), -1


def girth(const i64[:] indptr, const i32[:] indices):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef i64[:] dist = np.full(n, -1, dtype=np.int64)
    cdef i64[:] parent = np.full(n, -1, dtype=np.int64)
    cdef i64[:] queue = np.empty(max(n, 1), dtype=np.int64)
    cdef Py_ssize_t s, head, tail, j, t
    cdef i64 u, w, du, cyc, best = 0
    for s in range(n):
        head = 0
        tail = 0
        queue[tail] = s
        tail += 1
        dist[s] = 0
        parent[s] = -1
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            if best and 2 * du + 1 >= best:
                break
            for j in range(indptr[u], indptr[u + 1]):
                w = indices[j]
                if dist[w] < 0:
                    dist[w] = du + 1
                    parent[w] = u
                    queue[tail] = w
                    tail += 1
                elif w != parent[u]:
                    cyc = du + dist[w] + 1
                    if best == 0 or cyc < best:
                        best = cyc
        for t in range(tail):
            dist[queue[t]] = -1
    return best


def growth_violation(const i64[:] indptr, const i32[:] indices, const i64[:] ftab):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t rmax = ftab.shape[0] - 1
    cdef i64[:] stamp = np.full(n, -1, dtype=np.int64)
    cdef i64[:] queue = np.empty(max(n, 1), dtype=np.int64)
    cdef Py_ssize_t v, r, head, tail, end, j
    cdef i64 u, w
    for v in range(n):
        head = 0
        tail = 0
        queue[tail] = v
        tail += 1
        stamp[v] = v
        for r in range(rmax + 1):
            if tail >= ftab[r]:
                return v, r, tail
            if head == tail:
                break
            end = tail
            while head < end:
                u = queue[head]
                head += 1
                for j in range(indptr[u], indptr[u + 1]):
                    w = indices[j]
                    if stamp[w] != v:
                        stamp[w] = v
                        queue[tail] = w
                        tail += 1
    return -1, -1, 0
