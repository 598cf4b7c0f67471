"""Exact rank invariants of oriented graphs and the lower-optimality classifier."""

from .graph import (
    Graph,
    OrientedGraph,
    biconnected_blocks,
    components,
    cycle_decomposition,
    delete_vertices,
    pendant_vertices,
    underlying,
)
from .invariants import (
    OrientationClass,
    adjacency_matrix,
    bound_report,
    cyclomatic_d,
    invariant_report,
    matching_number,
    orientation_class,
    rank_r,
    skew_adjacency_matrix,
    skew_rank,
)
from .linalg import IntMatrix, is_skew_symmetric, rank
from .structure import (
    classify_lower_optimal,
    check_lower_optimal_consequences,
    compress,
    delta_reduce,
    delta_step,
    is_crucial,
    pendant_cycle_skew_rank,
)

__version__ = "0.1.0"
