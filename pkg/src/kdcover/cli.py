"""Single command-line entry point: generate, train, solve, eval, bench.

Every run resolves its settings from three layers (subcommand defaults,
then an optional --config TOML/JSON file, then explicit flags, flags
winning), derives all randomness from --seed, and writes a deterministic
<artifact>.meta.json sidecar next to every file it produces so runs are
auditable and byte-reproducible.

Exit codes: 0 success, 1 usage or input error, 2 runtime failure
(time limit exceeded, coverage-index memory cap).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import replace
from pathlib import Path

from . import __version__, bench as bench_mod, gen, neural
from .graph import (
    EdgeListParseError,
    coverage_rate,
    load_edge_list,
    read_seeds,
    write_edge_list,
    write_seeds,
)
from .solvers import (
    CoverageMemoryError,
    SolverTimeout,
    brute_force,
    cache_dir_from_env,
    celf,
    greedy_one,
    load_or_build_index,
    naive_greedy,
    top_k_by_score,
)

_DEFAULTS = {
    "generate": {"n": 1000, "p": None, "seed": 0, "directed": True,
                 "out": "graph.txt"},
    "train": {"arch": "grat", "d": 2, "k": None, "lr": 3.0, "lam": 1.0,
              "seed": 0, "optimizer": "sgd", "n": 1000, "p": None,
              "n_graphs": 20, "out": "model.bin"},
    "solve": {"graph": None, "algo": "celf", "d": 1, "k": 16, "seed": None,
              "directed": True, "time_limit": None, "model": None,
              "out": None},
    "eval": {"graph": None, "d": 1, "k": None, "directed": True,
             "seeds": None, "model": None, "seed": None},
    "bench": {"suite": None, "out": "results.csv", "time_limit": None},
}


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems with exit code 1, not 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> _Parser:
    p = _Parser(prog="kdcover",
                description="budget-constrained d-hop dominating set toolkit")
    p.add_argument("--version", action="version", version=f"kdcover {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="TOML/JSON file with flag defaults")
        sp.add_argument("--seed", type=int)

    g = sub.add_parser("generate", parents=[], help="write a seeded random graph")
    common(g)
    g.add_argument("--n", type=int)
    g.add_argument("--p", type=float, help="arc probability (default 10/n)")
    g.add_argument("--directed", dest="directed", action="store_const", const=True)
    g.add_argument("--undirected", dest="directed", action="store_const", const=False)
    g.add_argument("--out")

    t = sub.add_parser("train", help="train a neural scorer on seeded graphs")
    common(t)
    t.add_argument("--arch", choices=("grat", "gat", "gcn"))
    t.add_argument("--d", type=int)
    t.add_argument("--k", type=int, help="validation budget (default by d)")
    t.add_argument("--lr", type=float)
    t.add_argument("--lambda", dest="lam", type=float)
    t.add_argument("--optimizer", choices=("sgd", "adam"))
    t.add_argument("--n", type=int, help="vertices per training graph")
    t.add_argument("--p", type=float, help="arc probability (default 10/n)")
    t.add_argument("--n-graphs", dest="n_graphs", type=int)
    t.add_argument("--out")

    s = sub.add_parser("solve", help="pick seeds on one graph")
    common(s)
    s.add_argument("--graph")
    s.add_argument("--algo", choices=bench_mod.KNOWN_SOLVERS)
    s.add_argument("--d", type=int)
    s.add_argument("--k", type=int)
    s.add_argument("--model", help="scorer file (fastcover only)")
    s.add_argument("--directed", dest="directed", action="store_const", const=True)
    s.add_argument("--undirected", dest="directed", action="store_const", const=False)
    s.add_argument("--time-limit", dest="time_limit", type=float)
    s.add_argument("--out", help="seeds file to write")

    e = sub.add_parser("eval", help="coverage of a seeds file or a scorer")
    common(e)
    e.add_argument("--graph")
    e.add_argument("--d", type=int)
    e.add_argument("--k", type=int, help="budget when evaluating a scorer")
    e.add_argument("--seeds", help="seeds file to score")
    e.add_argument("--model", help="scorer file to score")
    e.add_argument("--directed", dest="directed", action="store_const", const=True)
    e.add_argument("--undirected", dest="directed", action="store_const", const=False)

    b = sub.add_parser("bench", help="run a suite file, write CSV")
    common(b)
    b.add_argument("--suite")
    b.add_argument("--time-limit", dest="time_limit", type=float,
                   help="override the suite's per-run limit")
    b.add_argument("--out")
    return p


def _load_config(path: str) -> dict:
    p = Path(path)
    text = p.read_text()
    if p.suffix.lower() == ".json":
        return json.loads(text)
    try:
        import tomllib
    except ModuleNotFoundError:  # pragma: no cover - py<3.11
        import tomli as tomllib
    return tomllib.loads(text)


def _resolve(args: argparse.Namespace) -> dict:
    """Layer defaults, config file, then explicit flags (flags win)."""
    out = dict(_DEFAULTS[args.command])
    if getattr(args, "config", None):
        cfg = _load_config(args.config)
        unknown = set(cfg) - set(out)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        out.update(cfg)
    for key in out:
        v = getattr(args, key, None)
        if v is not None:
            out[key] = v
    return out


def _sidecar(artifact_path, command: str, resolved: dict, extra: dict | None = None):
    """Deterministic metadata next to every artifact (no timestamps)."""
    meta = {
        "command": command,
        "config": {k: v for k, v in sorted(resolved.items())},
        "version": __version__,
    }
    if extra:
        meta.update(extra)
    path = str(artifact_path) + ".meta.json"
    with open(path, "w") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _print_row(record: bench_mod.BenchRecord) -> None:
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(bench_mod.CSV_COLUMNS)
    w.writerow([
        record.solver, record.graph, record.n, record.m, record.d, record.k,
        "" if record.coverage is None else repr(record.coverage),
        "" if record.time_s is None else repr(record.time_s),
        record.index_entries,
        "" if record.seed is None else record.seed,
        record.status,
    ])


def _cmd_generate(r: dict) -> int:
    p = r["p"] if r["p"] is not None else 10.0 / r["n"]
    spec = gen.GenSpec(n=r["n"], p=p, seed=r["seed"], directed=r["directed"])
    g = gen.erdos_renyi(spec)
    write_edge_list(g, r["out"])
    _sidecar(r["out"], "generate", {**r, "p": p}, {"n": g.n, "m": g.m})
    print(f"wrote {r['out']}: n={g.n} m={g.m}")
    return 0


def _cmd_train(r: dict) -> int:
    p = r["p"] if r["p"] is not None else 10.0 / r["n"]
    seeds = gen.derived_seeds(r["seed"], r["n_graphs"])
    graphs = [gen.erdos_renyi(gen.GenSpec(n=r["n"], p=p, seed=s)) for s in seeds]
    cfg = neural.TrainConfig(
        arch=r["arch"], d=r["d"], k_eval=r["k"], lr=r["lr"], lam=r["lam"],
        seed=r["seed"], optimizer=r["optimizer"],
        cache_dir=cache_dir_from_env(),
    )
    res = neural.train(cfg, graphs)
    neural.save_model(res.model, r["out"])
    _sidecar(r["out"], "train", {**r, "p": p}, {
        "best_epoch": res.best_epoch,
        "epochs_run": res.epochs_run,
        "val_history": res.val_history,
    })
    best = max(res.val_history) if res.val_history else float("nan")
    print(f"trained {r['arch']} d={r['d']}: best_epoch={res.best_epoch} "
          f"val={best:.4f} -> {r['out']}")
    return 0


def _cmd_solve(r: dict) -> int:
    if not r["graph"]:
        raise ValueError("solve needs --graph")
    g = load_edge_list(r["graph"], directed=r["directed"])
    k = min(r["k"], g.n)
    d = r["d"]
    algo = r["algo"]
    deadline = None if r["time_limit"] is None else time.monotonic() + r["time_limit"]

    model = None
    if algo == "fastcover":
        if not r["model"]:
            raise ValueError("fastcover needs --model")
        model = neural.load_model(r["model"])

    entries = 0
    t0 = time.perf_counter()
    if algo == "greedy":
        seeds = naive_greedy(g, k, d, deadline=deadline)
    elif algo == "celf":
        index = None
        if d >= 2 and cache_dir_from_env() is not None:
            index = load_or_build_index(g, d, cache_dir_from_env())
        st: dict = {}
        seeds = celf(g, k, d, index=index, stats=st, deadline=deadline)
        entries = st["index_entries"]
    elif algo == "greedy1":
        seeds = greedy_one(g, k, d, deadline=deadline)
    elif algo == "brute":
        seeds = brute_force(g, k, d)
    else:
        seeds = top_k_by_score(neural.forward(model, g), k)
    elapsed = time.perf_counter() - t0

    record = bench_mod.BenchRecord(
        solver=algo, graph=Path(r["graph"]).stem, n=g.n, m=g.m, d=d, k=k,
        coverage=float(coverage_rate(g, seeds, d)), time_s=elapsed,
        index_entries=entries, seed=r["seed"], status="ok")
    _print_row(record)

    if r["out"]:
        write_seeds(r["out"], seeds, g)
        _sidecar(r["out"], "solve", r, {"coverage": record.coverage})
    return 0


def _cmd_eval(r: dict) -> int:
    if not r["graph"]:
        raise ValueError("eval needs --graph")
    if bool(r["seeds"]) == bool(r["model"]):
        raise ValueError("eval needs exactly one of --seeds or --model")
    g = load_edge_list(r["graph"], directed=r["directed"])
    d = r["d"]
    if r["seeds"]:
        seeds = read_seeds(r["seeds"], g)
        solver = "seeds"
        k = len(seeds.seeds)
    else:
        model = neural.load_model(r["model"])
        k = min(r["k"] if r["k"] is not None else neural.DEFAULT_K_EVAL[d], g.n)
        seeds = top_k_by_score(neural.forward(model, g), k)
        solver = "fastcover"
    record = bench_mod.BenchRecord(
        solver=solver, graph=Path(r["graph"]).stem, n=g.n, m=g.m, d=d, k=k,
        coverage=float(coverage_rate(g, seeds, d)), time_s=None,
        index_entries=0, seed=r["seed"], status="ok")
    _print_row(record)
    return 0


def _cmd_bench(r: dict) -> int:
    if not r["suite"]:
        raise ValueError("bench needs --suite")
    suite = bench_mod.load_suite(r["suite"])
    if r["time_limit"] is not None:
        suite = replace(suite, time_limit=r["time_limit"])
    stats: dict = {}
    records = bench_mod.run_suite(suite, stats=stats)
    bench_mod.emit_csv(records, r["out"])
    _sidecar(r["out"], "bench", {**r, "suite": str(Path(r["suite"]).resolve())},
             {"rows": len(records),
              "model": stats.get("model_path")})
    print(f"{len(records)} rows -> {r['out']}")
    return 0


_DISPATCH = {
    "generate": _cmd_generate,
    "train": _cmd_train,
    "solve": _cmd_solve,
    "eval": _cmd_eval,
    "bench": _cmd_bench,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        resolved = _resolve(args)
        return _DISPATCH[args.command](resolved)
    except SolverTimeout as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except CoverageMemoryError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (EdgeListParseError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
