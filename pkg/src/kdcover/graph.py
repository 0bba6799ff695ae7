"""Directed graph storage, reversal, and multi-hop coverage.

Graphs are immutable after construction and stored in compressed sparse
row form (both directions), with vertex ids densely relabeled to 0..n-1.
All coverage queries are truncated breadth-first searches that allocate
their own scratch, so concurrent queries on a shared graph are safe.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


class EdgeListParseError(ValueError):
    """Raised when an edge-list line cannot be parsed; carries the line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class Graph:
    """Immutable directed graph with dense ids 0..n-1 in CSR form.

    Successor and predecessor lists are sorted ascending and free of
    duplicates and self-loops. `orig_ids[v]` maps a dense id back to the
    external id it was read from (identity for generated graphs).
    """

    __slots__ = (
        "n",
        "out_indptr",
        "out_indices",
        "in_indptr",
        "in_indices",
        "is_reversed_view",
        "orig_ids",
    )

    def __init__(
        self,
        n: int,
        out_indptr: np.ndarray,
        out_indices: np.ndarray,
        in_indptr: np.ndarray,
        in_indices: np.ndarray,
        is_reversed_view: bool = False,
        orig_ids: np.ndarray | None = None,
    ):
        if n < 1:
            raise ValueError("graph must have at least one vertex")
        self.n = n
        self.out_indptr = out_indptr
        self.out_indices = out_indices
        self.in_indptr = in_indptr
        self.in_indices = in_indices
        self.is_reversed_view = is_reversed_view
        self.orig_ids = orig_ids if orig_ids is not None else np.arange(n, dtype=np.int64)

    @property
    def m(self) -> int:
        """Number of arcs."""
        return int(self.out_indices.size)

    def successors(self, u: int) -> np.ndarray:
        return self.out_indices[self.out_indptr[u] : self.out_indptr[u + 1]]

    def predecessors(self, u: int) -> np.ndarray:
        return self.in_indices[self.in_indptr[u] : self.in_indptr[u + 1]]

    def out_degree(self, u: int) -> int:
        return int(self.out_indptr[u + 1] - self.out_indptr[u])

    def in_degree(self, u: int) -> int:
        return int(self.in_indptr[u + 1] - self.in_indptr[u])

    def arcs(self) -> tuple[np.ndarray, np.ndarray]:
        """All arcs as (sources, destinations), sorted by (source, dest)."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.out_indptr))
        return src, self.out_indices.astype(np.int64)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, reversed={self.is_reversed_view})"


@dataclass(frozen=True)
class VertexSet:
    """A set of vertex ids: boolean membership mask plus sorted id list."""

    mask: np.ndarray
    ids: np.ndarray

    @classmethod
    def from_mask(cls, mask: np.ndarray) -> "VertexSet":
        return cls(mask=mask, ids=np.flatnonzero(mask).astype(np.int64))

    @classmethod
    def from_ids(cls, ids: Iterable[int], n: int) -> "VertexSet":
        mask = np.zeros(n, dtype=bool)
        arr = np.asarray(sorted(set(int(i) for i in ids)), dtype=np.int64)
        mask[arr] = True
        return cls(mask=mask, ids=arr)

    def __len__(self) -> int:
        return int(self.ids.size)

    def __contains__(self, v: int) -> bool:
        return bool(self.mask[v])

    def __iter__(self):
        return iter(self.ids.tolist())


@dataclass
class SeedSet:
    """An ordered seed selection with optional per-step marginal gains.

    `seeds` preserve selection order (not sorted). `gains[i]` is the count
    of newly covered vertices when `seeds[i]` was added; None when the
    producing algorithm has no meaningful marginal (e.g. score-based
    selection).
    """

    seeds: np.ndarray
    gains: np.ndarray | None = None

    def __post_init__(self):
        self.seeds = np.asarray(self.seeds, dtype=np.int64)
        if len(set(self.seeds.tolist())) != self.seeds.size:
            raise ValueError("seed set contains repeated vertex ids")
        if self.gains is not None:
            self.gains = np.asarray(self.gains)
            if self.gains.size != self.seeds.size:
                raise ValueError("gains length must match seeds length")

    def __len__(self) -> int:
        return int(self.seeds.size)


def _first_appearance_relabel(arcs_ext: list[tuple[int, int]]) -> tuple[dict, np.ndarray]:
    """Map external ids to dense 0..n-1 in order of first appearance."""
    mapping: dict[int, int] = {}
    for u, v in arcs_ext:
        if u not in mapping:
            mapping[u] = len(mapping)
        if v not in mapping:
            mapping[v] = len(mapping)
    orig = np.empty(len(mapping), dtype=np.int64)
    for ext, dense in mapping.items():
        orig[dense] = ext
    return mapping, orig


def _csr_from_arcs(n: int, src: np.ndarray, dst: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Build (indptr, indices) from arc arrays; input must be deduplicated."""
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr, src + 1, 1)
    np.cumsum(indptr, out=indptr)
    return indptr, dst.astype(np.int64)


def _build_graph(n: int, src: np.ndarray, dst: np.ndarray, orig_ids: np.ndarray | None) -> Graph:
    # drop self-loops, dedupe arcs
    keep = src != dst
    src, dst = src[keep], dst[keep]
    if src.size:
        keys = src.astype(np.int64) * n + dst.astype(np.int64)
        keys = np.unique(keys)
        src = (keys // n).astype(np.int64)
        dst = (keys % n).astype(np.int64)
    out_indptr, out_indices = _csr_from_arcs(n, src, dst)
    in_indptr, in_indices = _csr_from_arcs(n, dst, src)
    return Graph(n, out_indptr, out_indices, in_indptr, in_indices, orig_ids=orig_ids)


def from_edge_list(lines: Iterable[str], directed: bool = True) -> Graph:
    """Parse a whitespace-separated edge list into a Graph.

    Lines starting with '#' or '%' are comments; blank lines are skipped.
    External ids are relabeled to dense 0..n-1 in first-appearance order.
    Self-loop arcs and duplicate arcs are dropped (a self-loop line still
    registers its vertex). With directed=False every edge is stored as a
    pair of opposing arcs.
    """
    arcs_ext: list[tuple[int, int]] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(lineno, f"expected two tokens, got {len(parts)}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(lineno, f"non-integer vertex id in {parts!r}") from None
        arcs_ext.append((u, v))
    if not arcs_ext:
        raise ValueError("edge list is empty: no vertices")
    mapping, orig_ids = _first_appearance_relabel(arcs_ext)
    n = len(mapping)
    src = np.fromiter((mapping[u] for u, _ in arcs_ext), dtype=np.int64, count=len(arcs_ext))
    dst = np.fromiter((mapping[v] for _, v in arcs_ext), dtype=np.int64, count=len(arcs_ext))
    if not directed:
        src, dst = np.concatenate([src, dst]), np.concatenate([dst, src])
    return _build_graph(n, src, dst, orig_ids)


def load_edge_list(path, directed: bool = True) -> Graph:
    """Load an edge-list file (see from_edge_list for the format)."""
    with open(path, "r") as fh:
        return from_edge_list(fh, directed=directed)


def from_arcs(n: int, src: np.ndarray, dst: np.ndarray) -> Graph:
    """Build a graph with given vertex count from raw arc arrays."""
    src = np.asarray(src, dtype=np.int64)
    dst = np.asarray(dst, dtype=np.int64)
    if src.size and (src.min() < 0 or src.max() >= n or dst.min() < 0 or dst.max() >= n):
        raise ValueError("arc endpoint out of range")
    return _build_graph(n, src, dst, orig_ids=None)


def reverse(g: Graph) -> Graph:
    """The reversed graph: every arc flipped. O(1), shares storage."""
    return Graph(
        g.n,
        out_indptr=g.in_indptr,
        out_indices=g.in_indices,
        in_indptr=g.out_indptr,
        in_indices=g.out_indices,
        is_reversed_view=not g.is_reversed_view,
        orig_ids=g.orig_ids,
    )


def _gather(indptr: np.ndarray, indices: np.ndarray, frontier: np.ndarray) -> np.ndarray:
    """Concatenate the adjacency slices of all frontier vertices."""
    starts = indptr[frontier]
    counts = indptr[frontier + 1] - starts
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=indices.dtype)
    # positions: starts[i] + 0..counts[i]-1 for each frontier vertex i
    offsets = np.arange(total, dtype=np.int64) - np.repeat(np.cumsum(counts) - counts, counts)
    return indices[np.repeat(starts, counts) + offsets]


def _bfs_mask(g: Graph, sources: np.ndarray, d: int) -> np.ndarray:
    """Boolean mask of vertices reachable from `sources` within d hops."""
    mask = np.zeros(g.n, dtype=bool)
    frontier = np.unique(np.asarray(sources, dtype=np.int64))
    mask[frontier] = True
    for _ in range(d):
        if frontier.size == 0:
            break
        neigh = _gather(g.out_indptr, g.out_indices, frontier)
        new = neigh[~mask[neigh]]
        if new.size == 0:
            break
        frontier = np.unique(new)
        mask[frontier] = True
    return mask


def d_coverage(g: Graph, source: int, d: int) -> VertexSet:
    """Vertices reachable from `source` in at most d hops (includes source)."""
    if not 0 <= source < g.n:
        raise ValueError(f"source {source} out of range for n={g.n}")
    if d < 0:
        raise ValueError("hop bound d must be >= 0")
    return VertexSet.from_mask(_bfs_mask(g, np.array([source]), d))


def d_coverage_of_set(g: Graph, s: "SeedSet | Sequence[int]", d: int) -> VertexSet:
    """Union of d-hop coverages of all seeds (multi-source BFS)."""
    seeds = s.seeds if isinstance(s, SeedSet) else np.asarray(list(s), dtype=np.int64)
    if d < 0:
        raise ValueError("hop bound d must be >= 0")
    if seeds.size == 0:
        return VertexSet.from_mask(np.zeros(g.n, dtype=bool))
    if seeds.min() < 0 or seeds.max() >= g.n:
        raise ValueError("seed id out of range")
    return VertexSet.from_mask(_bfs_mask(g, seeds, d))


def coverage_rate(g: Graph, s: "SeedSet | Sequence[int]", d: int) -> float:
    """|d-hop coverage of s| / n."""
    return len(d_coverage_of_set(g, s, d)) / g.n


def jaccard_d(g: Graph, u: int, v: int, d: int) -> float:
    """Jaccard similarity of the d-hop coverages of u and v."""
    mu = _bfs_mask(g, np.array([u]), d)
    mv = _bfs_mask(g, np.array([v]), d)
    inter = int(np.count_nonzero(mu & mv))
    union = int(np.count_nonzero(mu | mv))
    return inter / union


def graph_digest(g: Graph) -> str:
    """Stable content hash of the graph structure (platform independent)."""
    h = hashlib.sha256()
    h.update(np.int64(g.n).tobytes())
    h.update(g.out_indptr.astype("<i8").tobytes())
    h.update(g.out_indices.astype("<i8").tobytes())
    return h.hexdigest()


def write_edge_list(g: Graph, path) -> None:
    """Write the arc list as one "src dst" line per stored arc.

    Ids are the graph's original labels and lines follow adjacency order,
    so the output is deterministic and reloads (directed) to an equal
    graph. An undirected input was expanded to arc pairs at construction,
    so both directions are written.
    """
    src, dst = g.arcs()
    orig = g.orig_ids
    with open(path, "w") as fh:
        for s, t in zip(src.tolist(), dst.tolist()):
            fh.write(f"{int(orig[s])} {int(orig[t])}\n")


def write_seeds(path, s: SeedSet, g: Graph) -> None:
    """Write one original vertex id per line, in selection order."""
    with open(path, "w") as fh:
        for v in s.seeds.tolist():
            fh.write(f"{int(g.orig_ids[v])}\n")


def read_seeds(path, g: Graph) -> SeedSet:
    """Read a seeds file of original ids back into dense ids for g."""
    ext_to_dense = {int(e): i for i, e in enumerate(g.orig_ids.tolist())}
    seeds = []
    with open(path, "r") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line[0] in "#%":
                continue
            try:
                ext = int(line)
            except ValueError:
                raise EdgeListParseError(lineno, f"non-integer seed id {line!r}") from None
            if ext not in ext_to_dense:
                raise ValueError(f"seed id {ext} not present in graph")
            seeds.append(ext_to_dense[ext])
    return SeedSet(seeds=np.asarray(seeds, dtype=np.int64))
