"""Timing and coverage harness over solver/graph/d/k grids, emitting CSV.

A suite file (TOML or JSON) names the graphs (paths or generator specs),
the solvers, the d and k grids, and a per-run time limit. Every cell runs
sequentially with a cooperative deadline; a run that overruns its limit or
its index-memory cap becomes an explicit DNF row rather than an error, so
a partially-failed suite still produces a complete table.

Timing rules: each cell is the median of `repetitions` timed runs; greedy
solvers are timed end to end including any coverage-index build; the
neural scorer is timed as one forward pass plus top-k selection, with the
model loaded once per suite and its load time reported separately through
the `stats` out-parameter.
"""

from __future__ import annotations

import csv
import json
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import neural
from .gen import GenSpec, erdos_renyi
from .graph import Graph, coverage_rate, load_edge_list
from .solvers import (
    CoverageMemoryError,
    SolverTimeout,
    brute_force,
    celf,
    greedy_one,
    naive_greedy,
    top_k_by_score,
)

KNOWN_SOLVERS = ("greedy", "celf", "greedy1", "brute", "fastcover")

CSV_COLUMNS = (
    "solver", "graph", "n", "m", "d", "k",
    "coverage", "time_s", "index_entries", "seed", "status",
)


@dataclass(frozen=True)
class BenchRecord:
    """One suite cell: who ran on what, how well, and how fast.

    `coverage` and `time_s` are None on DNF rows; `status` is "ok",
    "timeout", or "memory". `seed` is the generator seed for synthetic
    graphs and None for graphs loaded from disk.
    """

    solver: str
    graph: str
    n: int
    m: int
    d: int
    k: int
    coverage: float | None
    time_s: float | None
    index_entries: int
    seed: int | None
    status: str = "ok"

    def __post_init__(self):
        if self.coverage is not None and not 0.0 <= self.coverage <= 1.0:
            raise ValueError(f"coverage out of range: {self.coverage}")
        if self.time_s is not None and self.time_s < 0:
            raise ValueError(f"negative time: {self.time_s}")


@dataclass(frozen=True)
class Suite:
    """Validated bench suite: graph descriptions plus the run grid."""

    graphs: tuple
    solvers: tuple
    ds: tuple
    ks: tuple
    time_limit: float = 900.0
    repetitions: int = 3
    model: str | None = None
    max_index_entries: int | None = None


def load_suite(path) -> Suite:
    """Parse and validate a TOML or JSON suite file.

    Relative graph/model paths are resolved against the suite file's
    directory. Raises ValueError on malformed content.
    """
    p = Path(path)
    text = p.read_text()
    if p.suffix.lower() == ".json":
        raw = json.loads(text)
    else:
        try:
            import tomllib
        except ModuleNotFoundError:  # pragma: no cover - py<3.11
            import tomli as tomllib
        raw = tomllib.loads(text)

    if not isinstance(raw, dict):
        raise ValueError("suite file must hold a table/object at top level")

    graphs = raw.get("graphs")
    if not graphs:
        raise ValueError("suite needs a non-empty 'graphs' list")
    checked = []
    for entry in graphs:
        if not isinstance(entry, dict):
            raise ValueError(f"graph entry must be a table/object: {entry!r}")
        if "path" in entry:
            resolved = dict(entry)
            resolved["path"] = str((p.parent / entry["path"]).resolve())
            checked.append(resolved)
        elif "n" in entry and "p" in entry:
            GenSpec(n=int(entry["n"]), p=float(entry["p"]),
                    seed=int(entry.get("seed", 0)),
                    directed=bool(entry.get("directed", True)))
            checked.append(dict(entry))
        else:
            raise ValueError(f"graph entry needs 'path' or 'n'+'p': {entry!r}")

    solvers = tuple(raw.get("solvers", ("celf",)))
    for s in solvers:
        if s not in KNOWN_SOLVERS:
            raise ValueError(f"unknown solver {s!r}; known: {KNOWN_SOLVERS}")

    ds = tuple(int(x) for x in _as_list(raw.get("d", [1])))
    ks = tuple(int(x) for x in _as_list(raw.get("k", [16])))
    if any(d < 1 for d in ds):
        raise ValueError("every d must be >= 1")
    if any(k < 1 for k in ks):
        raise ValueError("every k must be >= 1")

    model = raw.get("model")
    if model is not None:
        model = str((p.parent / model).resolve())
    if "fastcover" in solvers and model is None:
        raise ValueError("suite uses 'fastcover' but names no 'model'")

    reps = int(raw.get("repetitions", 3))
    if reps < 1:
        raise ValueError("repetitions must be >= 1")

    cap = raw.get("max_index_entries")
    return Suite(
        graphs=tuple(checked),
        solvers=solvers,
        ds=ds,
        ks=ks,
        time_limit=float(raw.get("time_limit", 900.0)),
        repetitions=reps,
        model=model,
        max_index_entries=None if cap is None else int(cap),
    )


def _as_list(v):
    return v if isinstance(v, (list, tuple)) else [v]


def _materialize(entry: dict) -> tuple[str, Graph, int | None]:
    """Turn one suite graph entry into (graph id, Graph, gen seed or None)."""
    if "path" in entry:
        g = load_edge_list(entry["path"], directed=entry.get("directed", True))
        return Path(entry["path"]).stem, g, None
    spec = GenSpec(n=int(entry["n"]), p=float(entry["p"]),
                   seed=int(entry.get("seed", 0)),
                   directed=bool(entry.get("directed", True)))
    gid = f"er-n{spec.n}-p{spec.p:g}-s{spec.seed}"
    if not spec.directed:
        gid += "-und"
    return gid, erdos_renyi(spec), spec.seed


def _run_cell(solver: str, g: Graph, d: int, k: int, suite: Suite,
              model: neural.Model | None) -> tuple:
    """Execute one (solver, graph, d, k) cell.

    Returns (coverage, median time, index entries, status); on timeout or
    memory-cap breach the first two are None.
    """
    k_eff = min(k, g.n)
    times = []
    seeds = None
    entries = 0
    try:
        for _ in range(suite.repetitions):
            t0 = time.perf_counter()
            if solver == "greedy":
                seeds = naive_greedy(g, k_eff, d,
                                     deadline=time.monotonic() + suite.time_limit)
            elif solver == "celf":
                st: dict = {}
                seeds = celf(g, k_eff, d, stats=st,
                             max_index_entries=suite.max_index_entries,
                             deadline=time.monotonic() + suite.time_limit)
                entries = st["index_entries"]
            elif solver == "greedy1":
                seeds = greedy_one(g, k_eff, d,
                                   deadline=time.monotonic() + suite.time_limit)
            elif solver == "brute":
                seeds = brute_force(g, k_eff, d)
            elif solver == "fastcover":
                seeds = top_k_by_score(neural.forward(model, g), k_eff)
            times.append(time.perf_counter() - t0)
    except SolverTimeout:
        return None, None, 0, "timeout"
    except CoverageMemoryError:
        return None, None, 0, "memory"

    med = float(np.median(times))
    if med > suite.time_limit:
        # solvers without interior deadline checks (one-shot inference)
        # are flagged after the fact instead
        return None, None, entries, "timeout"
    cov = coverage_rate(g, seeds, d)
    return float(cov), med, entries, "ok"


def run_suite(suite: Suite, stats: dict | None = None) -> list[BenchRecord]:
    """Run every (graph, d, solver, k) cell sequentially and collect records.

    Failures are data: cells that exceed the time limit or the index cap
    appear as DNF rows with a non-"ok" status. `stats`, when given,
    receives suite-level extras (model path and load time).
    """
    model = None
    if "fastcover" in suite.solvers:
        t0 = time.perf_counter()
        model = neural.load_model(suite.model)
        if stats is not None:
            stats["model_load_s"] = time.perf_counter() - t0
            stats["model_path"] = suite.model

    records = []
    for entry in suite.graphs:
        gid, g, gseed = _materialize(entry)
        for d in suite.ds:
            for solver in suite.solvers:
                for k in suite.ks:
                    cov, t, entries, status = _run_cell(solver, g, d, k, suite, model)
                    records.append(BenchRecord(
                        solver=solver, graph=gid, n=g.n, m=g.m, d=d, k=k,
                        coverage=cov, time_s=t, index_entries=entries,
                        seed=gseed, status=status))
    return records


def emit_csv(records: list[BenchRecord], path) -> None:
    """Write records with a fixed column order and RFC-4180 quoting.

    None fields become empty cells; floats use shortest-roundtrip repr so
    a parse of the file reproduces the records exactly.
    """
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in records:
            w.writerow([
                r.solver, r.graph, r.n, r.m, r.d, r.k,
                "" if r.coverage is None else repr(r.coverage),
                "" if r.time_s is None else repr(r.time_s),
                r.index_entries,
                "" if r.seed is None else r.seed,
                r.status,
            ])


def read_csv(path) -> list[BenchRecord]:
    """Parse a file produced by emit_csv back into records."""
    out = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            out.append(BenchRecord(
                solver=row["solver"], graph=row["graph"],
                n=int(row["n"]), m=int(row["m"]),
                d=int(row["d"]), k=int(row["k"]),
                coverage=float(row["coverage"]) if row["coverage"] else None,
                time_s=float(row["time_s"]) if row["time_s"] else None,
                index_entries=int(row["index_entries"]),
                seed=int(row["seed"]) if row["seed"] else None,
                status=row["status"]))
    return out
