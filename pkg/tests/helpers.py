"""Small shared utilities for the test suite."""

import numpy as np


def random_arcs(rng: np.random.Generator, n: int, p: float):
    """Dense Bernoulli sampling of a random directed arc set (no loops)."""
    mask = rng.random((n, n)) < p
    np.fill_diagonal(mask, False)
    src, dst = np.nonzero(mask)
    return src.astype(np.int64), dst.astype(np.int64)
