"""Sliding a fixed-length simple path through an undirected graph."""

from .bounds import (
    BoundsReport,
    bounds_report,
    circuit_rank,
    min_fvs,
    path_count_bound_cr,
    path_count_bound_fvs,
    solve_complete_graph,
)
from .fpt import solve_auto, solve_fpt, win_win
from .graph import (
    Graph,
    ReconfigStep,
    apply_step,
    canonicalize,
    legal_moves,
    replay,
    reverse_sequence,
)
from .instances import Instance, parse_instance, serialize_instance, six_vertex_example
from .statespace import (
    SearchResult,
    StateGraph,
    bfs_solve,
    build_state_graph,
    enumerate_paths,
    export_dot,
    goal_predicate_bfs,
)

__all__ = [
    "BoundsReport", "Graph", "Instance", "ReconfigStep", "SearchResult", "StateGraph",
    "apply_step", "bfs_solve", "bounds_report", "build_state_graph", "canonicalize",
    "circuit_rank", "enumerate_paths", "export_dot", "goal_predicate_bfs", "legal_moves",
    "min_fvs", "parse_instance", "path_count_bound_cr", "path_count_bound_fvs", "replay",
    "reverse_sequence", "serialize_instance", "solve_auto", "solve_complete_graph",
    "six_vertex_example", "solve_fpt", "win_win",
]
