"""Seed-set solvers: greedy family, exact brute force, and top-k selection.

All tie-breaking is by smallest vertex id, which makes every solver fully
deterministic and lets the lazy-forward variant be tested for element-wise
equality against the naive greedy.
"""

from __future__ import annotations

import heapq
import itertools
import os
import time
from pathlib import Path

import numpy as np

from .graph import Graph, SeedSet, _bfs_mask, d_coverage_of_set, graph_digest


class CoverageMemoryError(RuntimeError):
    """Raised when a coverage index would exceed its configured entry cap."""


class SolverTimeout(RuntimeError):
    """Raised by a solver when it crosses its cooperative deadline."""


def _check_deadline(deadline: float | None) -> None:
    if deadline is not None and time.monotonic() > deadline:
        raise SolverTimeout("solver exceeded its time limit")


class CoverageIndex:
    """Materialized d-hop coverage list for every vertex.

    Storage is one flat id array plus offsets, like CSR. `entries` is the
    total memory footprint in stored ids, i.e. the sum of all coverage set
    sizes.
    """

    def __init__(self, d: int, flat: np.ndarray, indptr: np.ndarray):
        self.d = d
        self.flat = flat
        self.indptr = indptr

    @property
    def n(self) -> int:
        return int(self.indptr.size - 1)

    @property
    def entries(self) -> int:
        return int(self.flat.size)

    def cover_list(self, u: int) -> np.ndarray:
        return self.flat[self.indptr[u] : self.indptr[u + 1]]

    @classmethod
    def build(cls, g: Graph, d: int, max_entries: int | None = None) -> "CoverageIndex":
        """BFS from every vertex; refuses once the running total would pass
        max_entries."""
        lists = []
        indptr = np.zeros(g.n + 1, dtype=np.int64)
        total = 0
        for u in range(g.n):
            ids = np.flatnonzero(_bfs_mask(g, np.array([u]), d)).astype(np.int64)
            total += ids.size
            if max_entries is not None and total > max_entries:
                raise CoverageMemoryError(
                    f"coverage index needs more than {max_entries} entries "
                    f"(reached {total} at vertex {u} of {g.n}); raise the cap "
                    f"or use a plain greedy solver"
                )
            lists.append(ids)
            indptr[u + 1] = total
        flat = np.concatenate(lists) if lists else np.empty(0, dtype=np.int64)
        return cls(d=d, flat=flat, indptr=indptr)


def cache_dir_from_env() -> Path | None:
    path = os.environ.get("KDCOVER_CACHE_DIR")
    return Path(path) if path else None


def load_or_build_index(
    g: Graph,
    d: int,
    cache_dir: Path | None = None,
    max_entries: int | None = None,
) -> CoverageIndex:
    """CoverageIndex with an optional on-disk cache keyed by graph content."""
    if cache_dir is None:
        return CoverageIndex.build(g, d, max_entries)
    cache_dir = Path(cache_dir)
    cache_dir.mkdir(parents=True, exist_ok=True)
    key = f"cov-{graph_digest(g)[:24]}-d{d}.npz"
    path = cache_dir / key
    if path.exists():
        data = np.load(path)
        idx = CoverageIndex(d=d, flat=data["flat"], indptr=data["indptr"])
        if idx.n == g.n:
            if max_entries is not None and idx.entries > max_entries:
                raise CoverageMemoryError(
                    f"cached coverage index has {idx.entries} entries, over the cap {max_entries}"
                )
            return idx
    idx = CoverageIndex.build(g, d, max_entries)
    np.savez(path, flat=idx.flat, indptr=idx.indptr)
    return idx


def _validate(g: Graph, k: int, d: int) -> None:
    if not 1 <= k <= g.n:
        raise ValueError(f"k must be in 1..{g.n}, got {k}")
    if d < 1:
        raise ValueError("d must be >= 1")


def naive_greedy(g: Graph, k: int, d: int, deadline: float | None = None) -> SeedSet:
    """Reference greedy: every round recomputes every candidate's marginal
    coverage by a fresh BFS. Ties go to the smallest id; stops early once
    everything is covered. `deadline` (time.monotonic value) aborts the run
    with SolverTimeout once crossed, checked between candidates."""
    _validate(g, k, d)
    covered = np.zeros(g.n, dtype=bool)
    seeds: list[int] = []
    gains: list[int] = []
    chosen = np.zeros(g.n, dtype=bool)
    for _ in range(k):
        best_gain, best_v = 0, -1
        for v in range(g.n):
            if (v & 0xFF) == 0:
                _check_deadline(deadline)
            if chosen[v]:
                continue
            mask = _bfs_mask(g, np.array([v]), d)
            gain = int(np.count_nonzero(mask & ~covered))
            if gain > best_gain:
                best_gain, best_v = gain, v
        if best_v < 0:
            break
        seeds.append(best_v)
        gains.append(best_gain)
        chosen[best_v] = True
        covered |= _bfs_mask(g, np.array([best_v]), d)
    return SeedSet(seeds=np.asarray(seeds, dtype=np.int64), gains=np.asarray(gains, dtype=np.int64))


def _marginal_d1(g: Graph, v: int, covered: np.ndarray) -> int:
    succ = g.successors(v)
    return int(not covered[v]) + int(np.count_nonzero(~covered[succ]))


def celf(
    g: Graph,
    k: int,
    d: int,
    index: CoverageIndex | None = None,
    max_index_entries: int | None = None,
    stats: dict | None = None,
    deadline: float | None = None,
) -> SeedSet:
    """Lazy-forward greedy. Cached gains are upper bounds (submodularity),
    so a head entry whose gain was computed this round is safe to take.
    Returns exactly what naive_greedy returns, faster.

    For d >= 2 a CoverageIndex is built (or passed in); d = 1 reads
    adjacency directly. `stats`, when given, receives index size and queue
    counters. `deadline` (time.monotonic value) aborts with SolverTimeout,
    checked after the index build and periodically in the queue loop.
    """
    _validate(g, k, d)
    _check_deadline(deadline)
    if d >= 2 and index is None:
        index = CoverageIndex.build(g, d, max_index_entries)
        _check_deadline(deadline)
    if index is not None and index.d != d:
        raise ValueError(f"index built for d={index.d}, solver called with d={d}")

    def marginal(v: int, covered: np.ndarray) -> int:
        if index is not None:
            lst = index.cover_list(v)
            return int(np.count_nonzero(~covered[lst]))
        return _marginal_d1(g, v, covered)

    def cover_ids(v: int) -> np.ndarray:
        if index is not None:
            return index.cover_list(v)
        return np.append(g.successors(v), v)

    covered = np.zeros(g.n, dtype=bool)
    # initial gains: nothing covered yet, so marginal = coverage size
    if index is not None:
        sizes = np.diff(index.indptr)
    else:
        sizes = np.diff(g.out_indptr) + 1
    heap = [(-int(sizes[v]), v) for v in range(g.n)]
    heapq.heapify(heap)
    stamp = np.zeros(g.n, dtype=np.int64)  # round whose gain is cached
    pops = recomputes = 0

    seeds: list[int] = []
    gains: list[int] = []
    rounds = 0
    while heap and len(seeds) < k:
        neg_gain, v = heapq.heappop(heap)
        pops += 1
        if (pops & 0x1FF) == 0:
            _check_deadline(deadline)
        if stamp[v] == rounds:
            if -neg_gain == 0:
                break  # everything covered
            seeds.append(v)
            gains.append(-neg_gain)
            covered[cover_ids(v)] = True
            rounds += 1
        else:
            fresh = marginal(v, covered)
            recomputes += 1
            stamp[v] = rounds
            heapq.heappush(heap, (-fresh, v))
    if stats is not None:
        stats["index_entries"] = index.entries if index is not None else 0
        stats["heap_pops"] = pops
        stats["gain_recomputes"] = recomputes
    return SeedSet(seeds=np.asarray(seeds, dtype=np.int64), gains=np.asarray(gains, dtype=np.int64))


def _sequential_d_gains(g: Graph, seeds: list[int], d: int) -> np.ndarray:
    """Marginal d-hop coverage of each seed given its predecessors in order."""
    covered = np.zeros(g.n, dtype=bool)
    gains = np.empty(len(seeds), dtype=np.int64)
    for i, v in enumerate(seeds):
        mask = _bfs_mask(g, np.array([v]), d)
        gains[i] = int(np.count_nonzero(mask & ~covered))
        covered |= mask
    return gains


def greedy_one(g: Graph, k: int, d: int, deadline: float | None = None) -> SeedSet:
    """Greedy that ranks candidates by 1-hop marginals regardless of d.

    Selection is exactly celf(g, k, 1); the returned gains are re-evaluated
    at the true d so the seed set can be compared fairly."""
    _validate(g, k, d)
    picked = celf(g, k, 1, deadline=deadline)
    seeds = picked.seeds.tolist()
    return SeedSet(seeds=picked.seeds, gains=_sequential_d_gains(g, seeds, d))


def brute_force(g: Graph, k: int, d: int, max_n: int = 14, max_k: int = 4) -> SeedSet:
    """Exact maximizer of d-hop coverage over all size-k seed sets.

    Ties go to the lexicographically smallest seed tuple. Refuses above the
    enumeration budget."""
    _validate(g, k, d)
    if g.n > max_n or k > max_k:
        raise ValueError(
            f"brute force budget exceeded (n={g.n} > {max_n} or k={k} > {max_k})"
        )
    masks = [_bfs_mask(g, np.array([v]), d) for v in range(g.n)]
    bits = [int.from_bytes(np.packbits(m).tobytes(), "big") for m in masks]
    best_count, best_combo = -1, None
    for combo in itertools.combinations(range(g.n), k):
        acc = 0
        for v in combo:
            acc |= bits[v]
        c = acc.bit_count()
        if c > best_count:
            best_count, best_combo = c, combo
    assert best_combo is not None
    return SeedSet(
        seeds=np.asarray(best_combo, dtype=np.int64),
        gains=_sequential_d_gains(g, list(best_combo), d),
    )


def top_k_by_score(scores: np.ndarray, k: int) -> SeedSet:
    """The k highest-score vertices, ties to the smallest id."""
    scores = np.asarray(scores, dtype=float)
    n = scores.size
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}, got {k}")
    order = np.lexsort((np.arange(n), -scores))
    return SeedSet(seeds=order[:k].astype(np.int64), gains=None)


def coverage_count(g: Graph, s: SeedSet, d: int) -> int:
    return len(d_coverage_of_set(g, s, d))
