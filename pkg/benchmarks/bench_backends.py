"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_backends.py [--n 20000] [--repeat 3]

Prints one line per kernel with the best wall time of each backend and
the speedup. Outputs of both backends are compared before timing.
"""
import argparse
import time

import numpy as np

from localcoloring import kernels
from localcoloring.graph import gen_graph


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def cases(n):
    g = gen_graph("random_regular", n=n, d=3, seed=0, method="repair")
    small = gen_graph("random_regular", n=max(n // 20, 50), d=3, seed=1, method="repair")
    order = np.random.default_rng(0).permutation(g.n).astype(np.int64)
    zeros = np.zeros(g.n, dtype=np.int64)
    cols = np.random.default_rng(1).permutation(g.n).astype(np.int64) + 1
    L = int(g.n).bit_length()
    growth = np.array([2, 5, 11, 23, 47, 95], dtype=np.int64)
    return [
        ("bfs_full_order", lambda m: m.bfs_full_order(g.indptr, g.indices, 0)),
        ("power_csr k=2", lambda m: m.power_csr(g.indptr, g.indices, 2)),
        ("cv_step", lambda m: m.cv_step(g.indptr, g.indices, cols, L, 3)),
        ("greedy_sweep", lambda m: m.greedy_sweep(g.indptr, g.indices, order, zeros.copy(), 4)),
        ("girth (n/20)", lambda m: m.girth(small.indptr, small.indices)),
        ("growth_violation (n/20)",
         lambda m: m.growth_violation(small.indptr, small.indices, growth)),
    ]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    mods = kernels.backends()
    if "cython" not in mods:
        print("compiled extension not built; only the Python backend is available")
    print(f"{'kernel':26s} {'python_s':>10s} {'cython_s':>10s} {'speedup':>8s}")
    for name, run in cases(args.n):
        outs = {k: run(m) for k, m in mods.items()}
        if len(outs) == 2 and not same(outs["python"], outs["cython"]):
            raise SystemExit(f"backends disagree on {name}")
        times = {k: best_of(lambda: run(m), args.repeat) for k, m in mods.items()}
        py = times["python"]
        cy = times.get("cython")
        if cy is None:
            print(f"{name:26s} {py:10.4f} {'-':>10s} {'-':>8s}")
        else:
            print(f"{name:26s} {py:10.4f} {cy:10.4f} {py / cy:7.1f}x")


if __name__ == "__main__":
    main()
