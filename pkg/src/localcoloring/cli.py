"""Command-line entry points: localcoloring <subcommand> [flags].

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
import argparse
import csv
import io
import json
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .errors import InfeasibleSpec, LocalColoringError
from .graph import EdgeLabeledGraph, gen_graph, read_graph, write_graph

FAMILIES = ["cycle", "path", "empty", "star", "complete", "grid", "torus", "random_regular",
            "bipartite_regular", "truncated_regular_tree", "petersen", "prism"]
ID_STRATEGIES = {"random": "random_permutation", "bfs": "bfs_order", "reverse-bfs": "reverse_bfs"}
ALGS = ["greedy-vertex", "greedy-edge", "sequential-greedy", "brooks", "sequential-brooks",
        "vizing"]
SUITES = ["greedy_logstar", "brooks_subexp", "vizing_chains", "matching_stages"]
BENCH_COLUMNS = ["n", "seed", "rounds", "palette", "wall_ms", "verified", "sweep_rounds",
                 "total_rounds", "family"]
# strict upper bounds on ball sizes (cycles, 2D tori and grids, 3D lattices)
GROWTH = {
    "linear": lambda r: 2 * r + 2,
    "quadratic": lambda r: 2 * r * r + 2 * r + 2,
    "cubic": lambda r: (2 * r + 1) ** 3 + 1,
}


def measured_growth(g):
    """Strict bound from the graph itself: 1 + the largest r-ball, per r."""
    from .graph import distances_from
    top = [1]
    for v in range(g.n):
        counts = np.bincount(list(distances_from(g, v, -1).values()))
        sizes = np.cumsum(counts)
        if len(sizes) > len(top):
            top.extend([top[-1]] * (len(sizes) - len(top)))
        for r, s in enumerate(sizes.tolist()):
            top[r] = max(top[r], s)
    tab = [s + 1 for s in top]
    return lambda r: tab[min(r, len(tab) - 1)]


def _growth(name, g):
    return measured_growth(g) if name == "measured" else GROWTH[name]


class UsageError(Exception):
    pass


def _dump(obj, path):
    text = json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _make_graph(a):
    fam = a.family
    if fam is None:
        raise UsageError("--family or --graph is required")
    if fam in ("grid", "torus"):
        side = int(round(math.sqrt(a.n))) if a.n else None
        w = a.w if a.w is not None else side
        h = a.h if a.h is not None else side
        return gen_graph("grid", w=w, h=h, wrap=fam == "torus" or a.wrap)
    if fam == "truncated_regular_tree":
        return gen_graph(fam, delta=a.delta, depth=a.depth)
    return gen_graph(fam, n=a.n, d=a.d, seed=a.seed)


def _load_graph(a):
    if getattr(a, "graph", None):
        g = read_graph(a.graph)
        return g.graph if isinstance(g, EdgeLabeledGraph) else g
    return _make_graph(a)


# ---------------------------------------------------------------- subcommands

def cmd_generate(a):
    g = _make_graph(a)
    if a.out in (None, "-"):
        buf = io.StringIO()
        buf.write(f"{g.n} {g.m} 0\n")
        for u, v in g.edge_list():
            buf.write(f"{u} {v}\n")
        sys.stdout.write(buf.getvalue())
    else:
        write_graph(g, a.out)
    print(f"generated {a.family}: n={g.n} m={g.m} max_degree={g.max_degree}", file=sys.stderr)
    return 0


def _run_alg(g, alg, ids_flag, seed, c, C=0.5, R=None, growth="quadratic"):
    from .localsim import assign_ids, run_deterministic
    from .vertex import distributed_greedy, sequential_greedy

    info = {}
    if alg in ("greedy-vertex", "greedy-edge"):
        mode = "vertex" if alg == "greedy-vertex" else "edge"
        ids = assign_ids(g, ID_STRATEGIES[ids_flag], c, seed)
        res = run_deterministic(g, distributed_greedy(mode, c=c), ids)
        outs = [int(o) for o in res.outputs]
        info = {k: int(v) for k, v in res.info.items()}
        return outs, int(info.get("rounds", res.rounds_used)), mode, info
    if alg == "sequential-greedy":
        return [int(x) for x in sequential_greedy(g)], g.n, "vertex", info
    if alg == "brooks":
        from .brooks import subexp_brooks
        res = subexp_brooks(g, _growth(growth, g), C=C, seed=seed, c_exponent=c, R=R)
        info = {"R": res.R, "classes": res.k if res.k < 2 ** 62 else str(res.k),
                "power_rounds": res.power_rounds, "nonempty_classes": len(res.sweep_log)}
        return [int(x) for x in res.colors], int(res.power_rounds + len(res.sweep_log)), "vertex", info
    if alg == "sequential-brooks":
        from .brooks import sequential_brooks
        return [int(x) for x in sequential_brooks(g)], g.n, "vertex", info
    if alg == "vizing":
        from .vizing import sequential_vizing
        order = np.random.default_rng(seed).permutation(g.m)
        d = sequential_vizing(g, order)
        return [int(x) for x in d.color], g.m, "edge", info
    raise UsageError(f"unknown algorithm {alg!r}")


def cmd_run(a):
    if a.manifest:
        with open(a.manifest) as fh:
            old = json.load(fh)
        params = old["params"]
        graph_file = old["graph_file"]
    else:
        if not a.graph:
            raise UsageError("run needs --graph (or --manifest)")
        graph_file = a.graph
        params = {"alg": a.alg, "ids": a.ids, "seed": a.seed, "c_exponent": a.c_exponent,
                  "C": a.C, "R": a.R, "growth": a.growth}
    g = _load_graph(argparse.Namespace(graph=graph_file))
    t0 = time.perf_counter()
    outs, rounds, mode, info = _run_alg(g, params["alg"], params["ids"], params["seed"],
                                        params["c_exponent"], params["C"], params["R"],
                                        params["growth"])
    print(f"{params['alg']}: {rounds} rounds, {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    manifest = {"graph_file": graph_file, "algorithm_name": params["alg"],
                "id_strategy": params["ids"], "seed": params["seed"], "mode": mode,
                "outputs": outs, "rounds_used": rounds, "info": info, "params": params}
    _dump(manifest, a.out)
    return 0


def _read_coloring(path):
    with open(path) as fh:
        text = fh.read().strip()
    if text.startswith("[") or text.startswith("{"):
        obj = json.loads(text)
        return obj["outputs"] if isinstance(obj, dict) else obj
    return [int(x) for x in text.split()]


def cmd_verify(a):
    from .localsim import verify_coloring

    mode = a.mode
    if a.coloring:
        if not a.graph:
            raise UsageError("--coloring needs --graph")
        g = _load_graph(a)
        outs = _read_coloring(a.coloring)
    else:
        with open(a.run) as fh:
            man = json.load(fh)
        g = _load_graph(argparse.Namespace(graph=a.graph or man["graph_file"]))
        outs = man["outputs"]
        mode = mode or man.get("mode", "vertex")
    mode = mode or "vertex"
    try:
        rep = verify_coloring(g, outs, mode, a.k)
    except ValueError as exc:
        raise UsageError(str(exc))
    if rep.passed:
        print("verified: ok")
        return 0
    print(f"verification failed: {rep.summary()}")
    for v in rep.violations[:50]:
        print(f"  conflict {v}")
    for v in rep.out_of_range[:50]:
        print(f"  out of range {v}")
    return 1


# ---------------------------------------------------------------- bench

def _bench_row(task):
    suite, n, seed, family, d, c, C, trunc, steps = task
    from .localsim import assign_ids, verify_coloring

    t0 = time.perf_counter()
    row = {"n": n, "seed": seed, "family": family, "sweep_rounds": "", "total_rounds": ""}
    if suite == "greedy_logstar":
        from .vertex import greedy_pipeline
        g = gen_graph(family, n=n, d=d, seed=seed) if family != "cycle" else gen_graph("cycle", n=n)
        ids = assign_ids(g, "random_permutation", c, seed)
        out, info = greedy_pipeline(g, ids, n, c, g.max_degree)
        ok = verify_coloring(g, out, "vertex", g.max_degree + 1).passed
        row.update(rounds=info["cv_rounds"], palette=len(set(out.tolist())),
                   sweep_rounds=info["sweep_rounds"], total_rounds=info["rounds"])
    elif suite == "brooks_subexp":
        from .brooks import subexp_brooks
        side = max(3, int(round(math.sqrt(n))))
        g = gen_graph("grid", w=side, h=side, wrap=True)
        res = subexp_brooks(g, GROWTH["quadratic"], C=C, seed=seed, c_exponent=c)
        ok = verify_coloring(g, res.colors, "vertex", g.max_degree).passed
        row.update(n=g.n, family="torus", rounds=res.power_rounds + len(res.sweep_log),
                   palette=len(set(res.colors.tolist())), sweep_rounds=len(res.sweep_log),
                   total_rounds=res.power_rounds + len(res.sweep_log))
    elif suite == "vizing_chains":
        from .vizing import augment, multi_step_search, sequential_vizing
        g = gen_graph("random_regular", n=n, d=d, seed=seed)
        order = np.random.default_rng(seed).permutation(g.m)
        dc = sequential_vizing(g, order[:-1])
        ch = multi_step_search(dc, int(order[-1]), max_steps=steps, trunc_len=trunc, seed=seed)
        augment(dc, ch.edges, inplace=True)
        ok = verify_coloring(g, dc.color, "edge", g.max_degree + 1).passed
        row.update(family="random_regular", rounds=len(ch.edges), palette=g.max_degree + 1,
                   sweep_rounds=ch.step_count, total_rounds=len(ch.edges))
    elif suite == "matching_stages":
        from .matching import doubling_stages
        g = gen_graph("bipartite_regular", n=n, d=d, seed=seed)
        M, logs = doubling_stages(g)
        ok = M.is_valid() and not M.unmatched
        row.update(family="bipartite_regular", rounds=len(logs), palette=logs[-1].k if logs else 0,
                   sweep_rounds=sum(lg.flips for lg in logs), total_rounds=len(logs))
    else:
        raise UsageError(f"unknown suite {suite!r}")
    row["verified"] = int(bool(ok))
    row["wall_ms"] = round((time.perf_counter() - t0) * 1000, 1)
    return row


def _parse_list(text):
    if text is None:
        return []
    return [int(float(x)) for x in text.split(",") if x.strip()]


def bench(suite, sizes, seeds, family="cycle", d=3, c=3, C=0.5, trunc=None, steps=64, jobs=1):
    """Bench rows ordered by (n, seed)."""
    if suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r}")
    tasks = [(suite, n, s, family, d, c, C, trunc, steps) for n in sizes for s in seeds]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(jobs) as ex:
            rows = list(ex.map(_bench_row, tasks))
    else:
        rows = [_bench_row(t) for t in tasks]
    rows.sort(key=lambda r: (r["n"], r["seed"]))
    return rows


def cmd_bench(a):
    sizes = _parse_list(a.sizes if a.sizes is not None else (str(a.n) if a.n else ""))
    seeds = _parse_list(a.seeds) if a.seeds is not None else [a.seed]
    rows = bench(a.suite, sizes, seeds, a.family or "cycle", a.d or 3, a.c_exponent, a.C,
                 a.trunc, a.steps, a.jobs)
    if a.format == "json":
        _dump({"suite": a.suite, "columns": BENCH_COLUMNS, "rows": rows}, a.out)
    else:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=BENCH_COLUMNS, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow(r)
        if a.out in (None, "-"):
            sys.stdout.write(buf.getvalue())
        else:
            with open(a.out, "w") as fh:
                fh.write(buf.getvalue())
    return 0 if all(r["verified"] for r in rows) else 1


# ---------------------------------------------------------------- experiments

def cmd_vizing(a):
    from .localsim import verify_coloring
    from .vizing import augment, multi_step_search, sequential_vizing

    g = _load_graph(a)
    rng = np.random.default_rng(a.seed)
    order = rng.permutation(g.m)
    report = {"n": g.n, "m": g.m, "delta": g.max_degree, "seed": a.seed}
    if a.steps is None:
        d = sequential_vizing(g, order)
    else:
        d = sequential_vizing(g, order[:-1])
        ch = multi_step_search(d, int(order[-1]), max_steps=a.steps, trunc_len=a.trunc, seed=a.seed)
        augment(d, ch.edges, inplace=True)
        report.update(chain_size=len(ch.edges), steps=ch.step_count, truncations=ch.truncations)
    rep = verify_coloring(g, d.color, "edge", g.max_degree + 1)
    report.update(verified=rep.passed, colors=[int(x) for x in d.color])
    _dump(report, a.out)
    return 0 if rep.passed else 1


def cmd_brooks(a):
    from .brooks import subexp_brooks
    from .localsim import verify_coloring

    g = _load_graph(a)
    res = subexp_brooks(g, _growth(a.growth, g), C=a.C, seed=a.seed, c_exponent=a.c_exponent, R=a.R)
    rep = verify_coloring(g, res.colors, "vertex", g.max_degree)
    _dump({"n": g.n, "R": res.R, "classes": str(res.k), "power_rounds": res.power_rounds,
           "sweep_log": res.sweep_log, "verified": rep.passed,
           "colors": [int(x) for x in res.colors]}, a.out)
    return 0 if rep.passed else 1


def cmd_match(a):
    from .matching import Matching, doubling_stages, maximal_matching, stage_eliminate

    g = _load_graph(a)
    M = maximal_matching(g, np.random.default_rng(a.seed).permutation(g.m)) if a.start == "maximal" \
        else Matching(g)
    if a.k is not None:
        logs = []
        M = stage_eliminate(g, M, a.k, logs)
    else:
        M, logs = doubling_stages(g, M)
    _dump({"n": g.n, "matching_size": len(M), "unmatched": len(M.unmatched),
           "stages": [{"k": lg.k, "flips": lg.flips, "unmatched": lg.unmatched} for lg in logs],
           "edges": [list(e) for e in M.edges]}, a.out)
    return 0 if M.is_valid() else 1


def cmd_game(a):
    from .games import (GlocalAlgorithm, extract_coloring, find_glocal_coloring, win_matrix)
    from .errors import NoWinningIndex

    H = _load_graph(a)
    delta = a.delta or 3
    if a.alg == "constant":
        alg = GlocalAlgorithm.constant(1, a.r)
    else:
        base = find_glocal_coloring(H, delta, 0 if a.alg == "zero-round" else a.r)
        if base is None:
            _dump({"n": H.n, "delta": delta, "r": a.r, "glocal_exists": False}, a.out)
            return 0
        if a.alg == "zero-round":
            col = [base.table.get((v, ()), 1) for v in range(H.n)]
            alg = GlocalAlgorithm.zero_round(col, a.r)
        else:
            alg = base
    wins = win_matrix(H, delta, a.r, alg)
    matrix = [[wins[(v, i)] for i in range(1, delta + 1)] for v in range(H.n)]
    try:
        col = extract_coloring(H, delta, a.r, alg)
    except NoWinningIndex:
        col = None
    _dump({"n": H.n, "delta": delta, "r": a.r, "alg": a.alg, "winners": matrix,
           "coloring": col}, a.out)
    return 0


def cmd_idgraph(a):
    from .games import id_graph_search

    if a.n is None or a.d is None:
        raise UsageError("idgraph needs --n and --d")
    labels = a.delta or 2
    girth_min = a.girth_min if a.girth_min is not None else 3
    cert = id_graph_search(a.n, labels, a.d, girth_min, a.seed, a.retries)
    if cert is None:
        _dump({"found": False, "n": a.n, "labels": labels, "d": a.d, "girth_min": girth_min,
               "seed": a.seed, "retries": a.retries}, a.out)
        return 0
    g = cert.graph.graph
    edges = [[u, v, int(cert.graph.labels[e])] for e, (u, v) in enumerate(g.edge_list())]
    _dump({"found": True, "n": a.n, "labels": labels, "d": a.d, "girth_min": girth_min,
           "seed": a.seed, "girth": cert.girth, "chi_el_le_labels": cert.chi_el_le_delta,
           "attempts": cert.attempts, "edges": edges}, a.out)
    return 0


# ---------------------------------------------------------------- parser

def _graph_flags(p):
    p.add_argument("--graph", help="graph file in the text format")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--w", type=int)
    p.add_argument("--h", type=int)
    p.add_argument("--wrap", action="store_true")
    p.add_argument("--delta", type=int)
    p.add_argument("--depth", type=int)


def build_parser():
    ap = argparse.ArgumentParser(prog="localcoloring",
                                 description="LOCAL-model graph coloring simulator")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None)
        p.add_argument("--c-exponent", type=int, default=3)

    p = sub.add_parser("generate", help="write a graph file")
    _graph_flags(p)
    common(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("run", help="run an algorithm and write a manifest")
    _graph_flags(p)
    common(p)
    p.add_argument("--alg", choices=ALGS, default="greedy-vertex")
    p.add_argument("--ids", choices=sorted(ID_STRATEGIES), default="random")
    p.add_argument("--C", type=float, default=0.5)
    p.add_argument("--R", type=int)
    p.add_argument("--growth", choices=sorted(GROWTH) + ["measured"], default="quadratic")
    p.add_argument("--manifest", help="rerun from a previous manifest")
    p.set_defaults(func=cmd_run, out="run.json")

    p = sub.add_parser("verify", help="verify a coloring")
    _graph_flags(p)
    p.add_argument("--run", default="run.json")
    p.add_argument("--coloring")
    p.add_argument("--mode", choices=["vertex", "edge"])
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="benchmark a suite, CSV/JSON table")
    common(p)
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--sizes", help="comma-separated n values (empty for header only)")
    p.add_argument("--n", type=int)
    p.add_argument("--seeds", help="comma-separated seeds (default: --seed)")
    p.add_argument("--family", choices=["cycle", "random_regular"])
    p.add_argument("--d", type=int)
    p.add_argument("--C", type=float, default=0.5)
    p.add_argument("--steps", type=int, default=64)
    p.add_argument("--trunc", type=int)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("vizing", help="(Δ+1)-edge-color, optionally via multi-step chains")
    _graph_flags(p)
    common(p)
    p.add_argument("--steps", type=int)
    p.add_argument("--trunc", type=int)
    p.set_defaults(func=cmd_vizing)

    p = sub.add_parser("brooks", help="Δ-color a graph of subexponential growth")
    _graph_flags(p)
    common(p)
    p.add_argument("--C", type=float, default=0.5)
    p.add_argument("--R", type=int)
    p.add_argument("--growth", choices=sorted(GROWTH) + ["measured"], default="quadratic")
    p.set_defaults(func=cmd_brooks)

    p = sub.add_parser("match", help="augmenting-path matching stages")
    _graph_flags(p)
    common(p)
    p.add_argument("--k", type=int, help="single stage with this length bound")
    p.add_argument("--start", choices=["empty", "maximal"], default="empty")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("game", help="solve the labeling games on a target graph")
    _graph_flags(p)
    common(p)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--alg", choices=["zero-round", "glocal", "constant"], default="zero-round")
    p.set_defaults(func=cmd_game)

    p = sub.add_parser("idgraph", help="search for an edge-labeled ID graph")
    common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--delta", type=int, help="number of labels")
    p.add_argument("--girth-min", type=int)
    p.add_argument("--retries", type=int, default=100)
    p.set_defaults(func=cmd_idgraph)
    return ap


def main(argv=None):
    ap = build_parser()
    a = ap.parse_args(argv)
    try:
        return a.func(a)
    except UsageError as exc:
        ap.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InfeasibleSpec, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except LocalColoringError as exc:
        print(f"failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
