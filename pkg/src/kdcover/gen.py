"""Seeded synthetic graph generation.

Uses numpy's PCG64 bit generator explicitly: its output stream is fixed by
the algorithm, so a given seed yields a byte-identical graph on every
platform and numpy release.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, from_arcs

# rows sampled per block; bounds peak memory at _CHUNK*n doubles
_CHUNK = 256


@dataclass(frozen=True)
class GenSpec:
    """Parameters of one random graph draw."""

    n: int
    p: float
    seed: int
    directed: bool = True

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must be in [0, 1]")


def erdos_renyi(spec: GenSpec) -> Graph:
    """Sample a graph where each vertex pair is an arc independently with
    probability p. Directed mode samples every ordered pair (u, v), u != v;
    undirected mode samples unordered pairs and stores both arcs.
    """
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    n = spec.n
    srcs, dsts = [], []
    for row0 in range(0, n, _CHUNK):
        rows = min(_CHUNK, n - row0)
        u = rng.random((rows, n))
        mask = u < spec.p
        r, c = np.nonzero(mask)
        r = r + row0
        keep = r != c if spec.directed else r < c
        srcs.append(r[keep])
        dsts.append(c[keep])
    src = np.concatenate(srcs) if srcs else np.empty(0, dtype=np.int64)
    dst = np.concatenate(dsts) if dsts else np.empty(0, dtype=np.int64)
    if not spec.directed:
        src, dst = np.concatenate([src, dst]), np.concatenate([dst, src])
    return from_arcs(n, src, dst)


def derived_seeds(master_seed: int, count: int) -> list[int]:
    """Expand one master seed into `count` well-separated child seeds."""
    state = np.random.SeedSequence(master_seed).generate_state(count, dtype=np.uint64)
    return [int(s) for s in state]
