"""Command-line harness: instance generation, solver drivers, and seeded
experiment sweeps with CSV reporting.

Every run emits rows with a fixed column order (header always included);
inapplicable cells are empty strings. All randomness is controlled by explicit
``--seed`` / ``--seeds`` flags; there is no wall-clock seeding. Exit codes:
0 success, 2 input error, 3 solver abort (iteration cap or cycle budget).
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import statistics
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from functools import partial

from .bfs_growth import (
    check_concentration_bounds,
    concentration_depth,
    fvs_directed,
    grow_induced_bfs,
    prune_fvs,
    sample_acyclic_fraction,
)
from .generic import GenericSolverConfig, SolverAbort, solve_implicit_hitting_set
from .graphs import GraphError, is_acyclic_directed, is_acyclic_undirected, shadow_undirected
from .instance_io import Instance, InstanceFormatError, read_instance, write_instance
from .models import ModelParams, gen_dnp, gen_gnp, gen_planted
from .oracles import bfs_cycle_oracle, shortest_cycle_oracle
from .planted import CycleBudgetExceeded, planted_diagnostics, recover_planted_fvs

COLUMNS = [
    "run_id", "seed", "algorithm", "n", "p", "delta", "k",
    "fvs_size", "bound_value", "acyclic_ok", "exact_match",
    "oracle_calls", "cycles_found", "runtime_ms",
]


def _fmt(value) -> str:
    if value is None or value == "":
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def make_row(**kwargs) -> dict:
    row = {c: "" for c in COLUMNS}
    for key, value in kwargs.items():
        if key not in row:
            raise KeyError(f"unknown column {key!r}")
        row[key] = value
    return row


def emit_rows(rows: list[dict], out_path: str | None) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        writer.writerow([_fmt(row[c]) for c in COLUMNS])
    text = buf.getvalue()
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def fvs_upper_bound(n: int, p: float | None) -> float | None:
    """Target size n - 0.9 (1/p) ln(np); the 0.9 absorbs lower-order terms."""
    if p is None or p <= 0 or n * p <= 1:
        return None
    return n - 0.9 * (1.0 / p) * math.log(n * p)


def _parse_seeds(spec: str) -> list[int]:
    if ".." in spec:
        a, b = spec.split("..", 1)
        lo, hi = int(a), int(b)
        if hi < lo:
            raise ValueError(f"empty seed range {spec!r}")
        return list(range(lo, hi + 1))
    return [int(spec)]


def _sweep(fn, seeds: list[int], jobs: int) -> list[dict]:
    if jobs <= 1:
        return [fn(seed) for seed in seeds]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, seeds))  # map preserves seed order


def _generate(model: str, params: ModelParams):
    if model == "gnp":
        return gen_gnp(params), False, None
    if model == "dnp":
        return gen_dnp(params), True, None
    if model == "planted":
        inst = gen_planted(params)
        return inst.digraph, True, inst.planted
    raise ValueError(f"unknown model {model!r}")


def _params_from_args(args, model: str) -> ModelParams:
    params = ModelParams(
        n=args.n,
        p=args.p,
        delta=getattr(args, "delta", None) if model == "planted" else None,
        k=getattr(args, "k", None),
        seed=0,
    )
    params.validate(model)
    return params


# ----------------------------------------------------------------------------
# per-seed runners (module level so --jobs can pickle them)

def _run_fvs_seed(seed: int, *, model: str, n: int, p: float, delta, k, root: int, prune: bool) -> dict:
    params = ModelParams(n=n, p=p, delta=delta, k=k, seed=seed)
    t0 = time.perf_counter()
    if model == "gnp":
        g = gen_gnp(params)
        result = grow_induced_bfs(g, root=root)
        fvs = result.fvs
        algorithm = "grow-induced-bfs"
        if prune:
            fvs = prune_fvs(g, fvs)
            algorithm += "+prune"
        ok = is_acyclic_undirected(g, fvs)
    else:  # dnp: solve the shadow
        d = gen_dnp(params)
        shadow = shadow_undirected(d)
        result = grow_induced_bfs(shadow, root=root)
        fvs = result.fvs
        algorithm = "grow-induced-bfs-shadow"
        if prune:
            fvs = prune_fvs(shadow, fvs)
            algorithm += "+prune"
        ok = is_acyclic_directed(d, fvs)
    ms = int((time.perf_counter() - t0) * 1000)
    return make_row(
        seed=seed, algorithm=algorithm, n=n, p=p,
        delta=delta if delta is not None else "",
        k=k if k is not None else "",
        fvs_size=int(fvs.size),
        bound_value=fvs_upper_bound(n, p) or "",
        acyclic_ok=bool(ok), runtime_ms=ms,
    )


def _run_planted_seed(seed: int, *, n: int, p: float, delta: float, k: int) -> dict:
    params = ModelParams(n=n, p=p, delta=delta, k=k, seed=seed)
    t0 = time.perf_counter()
    inst = gen_planted(params)
    report = recover_planted_fvs(inst.digraph, k, planted=inst.planted)
    ok = is_acyclic_directed(inst.digraph, report.recovered)
    ms = int((time.perf_counter() - t0) * 1000)
    return make_row(
        seed=seed, algorithm="recover-planted", n=n, p=p, delta=delta, k=k,
        fvs_size=len(report.recovered),
        bound_value=k * math.floor(delta * n),
        acyclic_ok=bool(ok),
        exact_match=bool(report.exact_match),
        cycles_found=report.cycles_found,
        runtime_ms=ms,
    )


def _run_lemma_seed(seed: int, *, n: int, p: float, root: int) -> dict:
    params = ModelParams(n=n, p=p, seed=seed)
    t0 = time.perf_counter()
    g = gen_gnp(params)
    result = grow_induced_bfs(g, root=root)
    report = check_concentration_bounds(result.stats, n, p)
    ok = is_acyclic_undirected(g, result.fvs)
    ms = int((time.perf_counter() - t0) * 1000)
    return make_row(
        seed=seed, algorithm="concentration-check", n=n, p=p,
        fvs_size=int(result.fvs.size),
        bound_value=report.horizon,
        acyclic_ok=bool(ok),
        exact_match=bool(report.all_pass) if report.applicable else "",
        runtime_ms=ms,
    )


# ----------------------------------------------------------------------------
# commands

def cmd_generate(args) -> int:
    params = ModelParams(
        n=args.n, p=args.p,
        delta=args.delta if args.model == "planted" else None,
        k=args.k, seed=args.seed,
    )
    params.validate(args.model)
    graph, directed, planted = _generate(args.model, params)
    write_instance(args.out, Instance(graph=graph, directed=directed, planted=planted, params=params))
    return 0


def _load_or_generate(args, allowed_models=("gnp", "dnp", "planted")):
    """Returns (graph, directed, planted, params, seed_label) for file or model input."""
    if args.instance is not None:
        inst = read_instance(args.instance)
        params = inst.params
        seed = params.seed if params is not None else ""
        return inst.graph, inst.directed, inst.planted, params, seed
    if args.model is None:
        raise ValueError("provide an instance file or --model with parameters")
    if args.model not in allowed_models:
        raise ValueError(f"model {args.model!r} not supported by this command")
    if args.seed is None:
        raise ValueError("--seed is required with --model (no wall-clock seeding)")
    params = ModelParams(
        n=args.n, p=args.p,
        delta=args.delta if args.model == "planted" else None,
        k=getattr(args, "k", None), seed=args.seed,
    )
    params.validate(args.model)
    graph, directed, planted = _generate(args.model, params)
    return graph, directed, planted, params, args.seed


def cmd_solve_fvs(args) -> int:
    if args.instance is None and args.seeds is not None:
        seeds = _parse_seeds(args.seeds)
        if args.model not in ("gnp", "dnp"):
            raise ValueError("--seeds sweeps support --model gnp or dnp")
        fn = partial(
            _run_fvs_seed, model=args.model, n=args.n, p=args.p,
            delta=None, k=None, root=args.root, prune=args.prune,
        )
        rows = _sweep(fn, seeds, args.jobs)
        for i, row in enumerate(rows):
            row["run_id"] = i
        emit_rows(rows, args.out)
        return 0

    graph, directed, planted, params, seed = _load_or_generate(args, ("gnp", "dnp"))
    t0 = time.perf_counter()
    if directed:
        shadow = shadow_undirected(graph)
        result = grow_induced_bfs(shadow, root=args.root)
        fvs = result.fvs
        algorithm = "grow-induced-bfs-shadow"
        if args.prune:
            fvs = prune_fvs(shadow, fvs)
            algorithm += "+prune"
        ok = is_acyclic_directed(graph, fvs)
    else:
        result = grow_induced_bfs(graph, root=args.root)
        fvs = result.fvs
        algorithm = "grow-induced-bfs"
        if args.prune:
            fvs = prune_fvs(graph, fvs)
            algorithm += "+prune"
        ok = is_acyclic_undirected(graph, fvs)
    ms = int((time.perf_counter() - t0) * 1000)
    p = params.p if params is not None else None
    row = make_row(
        run_id=0, seed=seed, algorithm=algorithm, n=graph.n,
        p=p if p is not None else "",
        delta=params.delta if params is not None and params.delta is not None else "",
        k=params.k if params is not None and params.k is not None else "",
        fvs_size=int(fvs.size),
        bound_value=fvs_upper_bound(graph.n, p) or "",
        acyclic_ok=bool(ok), runtime_ms=ms,
    )
    emit_rows([row], args.out)
    return 0


def cmd_solve_generic(args) -> int:
    graph, directed, planted, params, seed = _load_or_generate(args, ("gnp", "dnp"))
    if args.oracle == "bfs-cycle":
        if directed:
            raise ValueError("the bfs-cycle oracle works on undirected instances")
        oracle = bfs_cycle_oracle(graph, root=args.root)
    else:
        oracle = shortest_cycle_oracle(graph)
    cfg = GenericSolverConfig(oracle=oracle, max_swap_out=args.ymax)
    t0 = time.perf_counter()
    try:
        cert = solve_implicit_hitting_set(graph.n, cfg)
    except SolverAbort as exc:
        print(f"solver abort: {exc}", file=sys.stderr)
        emit_rows([make_row(run_id=0, seed=seed, algorithm=f"generic-{args.oracle}",
                            n=graph.n, p=params.p if params else "")], args.out)
        return 3
    ms = int((time.perf_counter() - t0) * 1000)
    solution = cert.solution.members
    ok = (
        is_acyclic_directed(graph, solution)
        if directed
        else is_acyclic_undirected(graph, solution)
    )
    row = make_row(
        run_id=0, seed=seed, algorithm=f"generic-{args.oracle}", n=graph.n,
        p=params.p if params is not None else "",
        fvs_size=len(solution),
        acyclic_ok=bool(ok),
        oracle_calls=cert.oracle_calls,
        runtime_ms=ms,
    )
    emit_rows([row], args.out)
    return 0


def cmd_solve_planted(args) -> int:
    if args.instance is None and args.seeds is not None:
        if args.model != "planted" or args.delta is None or args.k is None:
            raise ValueError("--seeds sweeps need --model planted with --delta and --k")
        seeds = _parse_seeds(args.seeds)
        fn = partial(_run_planted_seed, n=args.n, p=args.p, delta=args.delta, k=args.k)
        try:
            rows = _sweep(fn, seeds, args.jobs)
        except CycleBudgetExceeded as exc:
            print(f"solver abort: {exc}", file=sys.stderr)
            emit_rows([make_row(algorithm="recover-planted", n=args.n, p=args.p)], args.out)
            return 3
        for i, row in enumerate(rows):
            row["run_id"] = i
        emit_rows(rows, args.out)
        return 0

    graph, directed, planted, params, seed = _load_or_generate(args, ("planted", "dnp"))
    if not directed:
        raise ValueError("planted recovery needs a directed instance")
    k = args.k if args.k is not None else (params.k if params is not None else None)
    if k is None:
        raise ValueError("--k is required (or a params trailer carrying k)")
    t0 = time.perf_counter()
    try:
        report = recover_planted_fvs(graph, k, planted=planted)
    except CycleBudgetExceeded as exc:
        print(f"solver abort: {exc}", file=sys.stderr)
        emit_rows([make_row(run_id=0, seed=seed, algorithm="recover-planted", n=graph.n, k=k)], args.out)
        return 3
    ms = int((time.perf_counter() - t0) * 1000)
    delta = params.delta if params is not None and params.delta is not None else None
    row = make_row(
        run_id=0, seed=seed, algorithm="recover-planted", n=graph.n,
        p=params.p if params is not None else "",
        delta=delta if delta is not None else "", k=k,
        fvs_size=len(report.recovered),
        bound_value=k * math.floor(delta * graph.n) if delta is not None else "",
        acyclic_ok=bool(is_acyclic_directed(graph, report.recovered)),
        exact_match=bool(report.exact_match) if report.exact_match is not None else "",
        cycles_found=report.cycles_found,
        runtime_ms=ms,
    )
    emit_rows([row], args.out)
    return 0


def cmd_verify_planted(args) -> int:
    graph, directed, planted, params, seed = _load_or_generate(args, ("planted",))
    if not directed or planted is None:
        raise ValueError("verification needs a directed instance with a planted trailer")
    if params is None:
        raise ValueError("verification needs a params trailer")
    k = args.k if args.k is not None else params.k
    if k is None:
        raise ValueError("--k is required (or a params trailer carrying k)")
    from .models import PlantedInstance  # local import to keep CLI deps flat
    import numpy as np

    rest = np.asarray(sorted(set(range(graph.n)) - set(planted)), dtype=np.int64)
    inst = PlantedInstance(digraph=graph, planted=planted, params=params, dag_order=rest)
    t0 = time.perf_counter()
    diag = planted_diagnostics(inst, samples=args.samples, k=k)
    ms = int((time.perf_counter() - t0) * 1000)
    if diag.hypothesis_note:
        print(f"warning: {diag.hypothesis_note}", file=sys.stderr)
    row = make_row(
        run_id=0, seed=seed, algorithm="verify-planted", n=graph.n,
        p=params.p, delta=params.delta if params.delta is not None else "", k=k,
        fvs_size=diag.greedy_size,
        bound_value=diag.greedy_bound,
        acyclic_ok=bool(is_acyclic_directed(graph, planted)),
        exact_match=bool(diag.all_covered and diag.greedy_ok),
        runtime_ms=ms,
    )
    emit_rows([row], args.out)
    return 0


def _lemma_rows(args) -> list[dict]:
    seeds = _parse_seeds(args.seeds)
    c = args.n * args.p
    if c - 20 * math.sqrt(c) <= 0:
        print(
            f"warning: c - 20 sqrt(c) = {c - 20 * math.sqrt(c):.1f} <= 0; "
            "concentration checks are not applicable at these parameters",
            file=sys.stderr,
        )
    fn = partial(_run_lemma_seed, n=args.n, p=args.p, root=args.root)
    rows = _sweep(fn, seeds, args.jobs)
    for i, row in enumerate(rows):
        row["run_id"] = i
    return rows


def cmd_check_lemma1(args) -> int:
    rows = _lemma_rows(args)
    emit_rows(rows, args.out)
    return 0


def _theorem2_row(args) -> dict:
    params = ModelParams(n=args.n, p=args.p, seed=args.seed)
    params.validate("gnp")
    t0 = time.perf_counter()
    g = gen_gnp(params)
    fraction = sample_acyclic_fraction(g, args.r, args.samples, args.seed)
    ms = int((time.perf_counter() - t0) * 1000)
    # bound_value carries the measured acyclic fraction: it is the bounded quantity
    return make_row(
        run_id=0, seed=args.seed, algorithm="induced-acyclic-sampler",
        n=args.n, p=args.p,
        bound_value=fraction,
        oracle_calls=args.samples,
        runtime_ms=ms,
    )


def cmd_scan_lowerbound(args) -> int:
    emit_rows([_theorem2_row(args)], args.out)
    return 0


def _median(values: list[float]) -> float:
    return float(statistics.median(values)) if values else float("nan")


def cmd_experiment(args) -> int:
    recipe = args.recipe
    if recipe == "theorem1":
        seeds = _parse_seeds(args.seeds)
        fn = partial(_run_fvs_seed, model="gnp", n=args.n, p=args.p,
                     delta=None, k=None, root=args.root, prune=False)
        rows = _sweep(fn, seeds, args.jobs)
        bound = fvs_upper_bound(args.n, args.p)
        sizes = [row["fvs_size"] for row in rows]
        passes = sum(1 for s in sizes if bound is not None and s <= bound)
        agg = make_row(
            run_id="aggregate", algorithm="theorem1-aggregate", n=args.n, p=args.p,
            fvs_size=_median(sizes), bound_value=bound or "",
            exact_match=passes / len(rows) if rows else "",
        )
    elif recipe == "lemma1":
        rows = _lemma_rows(args)
        applicable = [row for row in rows if row["exact_match"] != ""]
        passes = sum(1 for row in applicable if row["exact_match"])
        agg = make_row(
            run_id="aggregate", algorithm="lemma1-aggregate", n=args.n, p=args.p,
            fvs_size=_median([row["fvs_size"] for row in rows]),
            bound_value=concentration_depth(args.n, args.p),
            exact_match=passes / len(applicable) if applicable else "",
        )
    elif recipe == "theorem2":
        rows = [_theorem2_row(args)]
        agg = make_row(
            run_id="aggregate", algorithm="theorem2-aggregate", n=args.n, p=args.p,
            bound_value=rows[0]["bound_value"],
        )
    elif recipe == "theorem5":
        seeds = _parse_seeds(args.seeds)
        fn = partial(_run_planted_seed, n=args.n, p=args.p, delta=args.delta, k=args.k)
        rows = _sweep(fn, seeds, args.jobs)
        matches = sum(1 for row in rows if row["exact_match"])
        agg = make_row(
            run_id="aggregate", algorithm="theorem5-aggregate", n=args.n, p=args.p,
            delta=args.delta, k=args.k,
            fvs_size=_median([row["fvs_size"] for row in rows]),
            bound_value=args.k * math.floor(args.delta * args.n),
            exact_match=matches / len(rows) if rows else "",
        )
    else:
        raise ValueError(f"unknown recipe {recipe!r}")
    for i, row in enumerate(rows):
        row["run_id"] = i
    rows.append(agg)
    emit_rows(rows, args.out)
    return 0


# ----------------------------------------------------------------------------
# argument parsing

def _add_common_model(sub, planted: bool = False) -> None:
    sub.add_argument("--model", choices=["gnp", "dnp", "planted"] if planted else ["gnp", "dnp"])
    sub.add_argument("--n", type=int)
    sub.add_argument("--p", type=float)
    sub.add_argument("--delta", type=float)
    sub.add_argument("--seed", type=int)
    sub.add_argument("--seeds", type=str, help="inclusive range a..b, one row per seed")
    sub.add_argument("--jobs", type=int, default=1)
    sub.add_argument("--out", type=str, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ihs", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    gen = subs.add_parser("generate", help="write a random instance file")
    gen.add_argument("--model", choices=["gnp", "dnp", "planted"], required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--p", type=float, required=True)
    gen.add_argument("--delta", type=float)
    gen.add_argument("--k", type=int)
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--out", type=str, required=True)
    gen.set_defaults(fn=cmd_generate)

    fvs = subs.add_parser("solve-fvs", help="feedback vertex set via induced BFS growth")
    fvs.add_argument("instance", nargs="?")
    _add_common_model(fvs)
    fvs.add_argument("--root", type=int, default=0)
    fvs.add_argument("--prune", action="store_true")
    fvs.set_defaults(fn=cmd_solve_fvs)

    gnr = subs.add_parser("solve-generic", help="oracle-driven exact hitting set solver")
    gnr.add_argument("instance", nargs="?")
    _add_common_model(gnr)
    gnr.add_argument("--oracle", choices=["bfs-cycle", "shortest-cycle"], required=True)
    gnr.add_argument("--ymax", type=int, default=2)
    gnr.add_argument("--root", type=int, default=0)
    gnr.set_defaults(fn=cmd_solve_generic)

    pla = subs.add_parser("solve-planted", help="recover a planted feedback vertex set")
    pla.add_argument("instance", nargs="?")
    _add_common_model(pla, planted=True)
    pla.add_argument("--k", type=int)
    pla.set_defaults(fn=cmd_solve_planted)

    ver = subs.add_parser("verify-planted", help="statistical checks of the planted structure")
    ver.add_argument("instance", nargs="?")
    _add_common_model(ver, planted=True)
    ver.add_argument("--k", type=int)
    ver.add_argument("--samples", type=int, default=5)
    ver.set_defaults(fn=cmd_verify_planted)

    lem = subs.add_parser("check-lemma1", help="per-level concentration checks of growth runs")
    lem.add_argument("--n", type=int, required=True)
    lem.add_argument("--p", type=float, required=True)
    lem.add_argument("--seeds", type=str, required=True)
    lem.add_argument("--root", type=int, default=0)
    lem.add_argument("--jobs", type=int, default=1)
    lem.add_argument("--out", type=str, default=None)
    lem.set_defaults(fn=cmd_check_lemma1)

    scn = subs.add_parser("scan-lowerbound", help="acyclic fraction of sampled induced subsets")
    scn.add_argument("--n", type=int, required=True)
    scn.add_argument("--p", type=float, required=True)
    scn.add_argument("--r", type=int, required=True)
    scn.add_argument("--samples", type=int, required=True)
    scn.add_argument("--seed", type=int, required=True)
    scn.add_argument("--out", type=str, default=None)
    scn.set_defaults(fn=cmd_scan_lowerbound)

    exp = subs.add_parser("experiment", help="named experiment recipes with an aggregate row")
    exp.add_argument("--recipe", choices=["theorem1", "lemma1", "theorem2", "theorem5"], required=True)
    exp.add_argument("--n", type=int, required=True)
    exp.add_argument("--p", type=float, required=True)
    exp.add_argument("--delta", type=float)
    exp.add_argument("--k", type=int)
    exp.add_argument("--r", type=int)
    exp.add_argument("--samples", type=int)
    exp.add_argument("--seed", type=int)
    exp.add_argument("--seeds", type=str)
    exp.add_argument("--root", type=int, default=0)
    exp.add_argument("--jobs", type=int, default=1)
    exp.add_argument("--out", type=str, default=None)
    exp.set_defaults(fn=cmd_experiment)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _validate_recipe_args(args)
        return args.fn(args)
    except (InstanceFormatError, GraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _validate_recipe_args(args) -> None:
    if getattr(args, "command", None) != "experiment":
        return
    recipe = args.recipe
    if recipe in ("theorem1", "lemma1", "theorem5") and args.seeds is None:
        raise ValueError(f"recipe {recipe} requires --seeds (no wall-clock seeding)")
    if recipe == "theorem2":
        if args.seed is None or args.r is None or args.samples is None:
            raise ValueError("recipe theorem2 requires --r, --samples and --seed")
    if recipe == "theorem5" and (args.delta is None or args.k is None):
        raise ValueError("recipe theorem5 requires --delta and --k")


if __name__ == "__main__":
    sys.exit(main())
