"""kdcover: budget-constrained d-hop dominating set solvers.

Greedy baselines (naive, lazy-forward, degree-style single-pass, exact
brute force) and a one-pass graph neural scorer trained without labels
against a probabilistic coverage objective.
"""

from .gen import GenSpec, derived_seeds, erdos_renyi
from .graph import (
    EdgeListParseError,
    Graph,
    SeedSet,
    VertexSet,
    coverage_rate,
    d_coverage,
    d_coverage_of_set,
    from_arcs,
    from_edge_list,
    graph_digest,
    jaccard_d,
    load_edge_list,
    read_seeds,
    reverse,
    write_edge_list,
    write_seeds,
)
from .neural import (
    Model,
    TrainConfig,
    TrainResult,
    forward,
    init_model,
    load_model,
    save_model,
    train,
)
from .solvers import (
    CoverageIndex,
    CoverageMemoryError,
    SolverTimeout,
    brute_force,
    celf,
    coverage_count,
    greedy_one,
    naive_greedy,
    top_k_by_score,
)

__version__ = "0.1.0"

__all__ = [
    "CoverageIndex",
    "CoverageMemoryError",
    "EdgeListParseError",
    "GenSpec",
    "Graph",
    "Model",
    "SeedSet",
    "SolverTimeout",
    "TrainConfig",
    "TrainResult",
    "VertexSet",
    "brute_force",
    "celf",
    "coverage_count",
    "coverage_rate",
    "d_coverage",
    "d_coverage_of_set",
    "derived_seeds",
    "erdos_renyi",
    "forward",
    "from_arcs",
    "from_edge_list",
    "graph_digest",
    "greedy_one",
    "init_model",
    "jaccard_d",
    "load_edge_list",
    "load_model",
    "naive_greedy",
    "read_seeds",
    "reverse",
    "save_model",
    "top_k_by_score",
    "train",
    "write_edge_list",
    "write_seeds",
    "__version__",
]
