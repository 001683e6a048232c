"""Induced matchings in graphs of maximum degree at most 4."""

from .bounds import BoundReport, bound_report, conjecture_scan, corollary_check
from .engine import (
    ReductionTrace,
    TheoremViolation,
    bounded_induced_matching,
    find_reduction,
    verify_trace,
)
from .families import blown_c5, double_h, is_c5_squared, random_max_deg4, triangle_pendants
from .graph import Graph, build_graph, components, distance, edges_independent
from .graphio import encode_graph6, encode_report, parse_edge_list, parse_graph6
from .matching import (
    InducedMatching,
    exact_max_induced_matching,
    greedy_maximal_induced_matching,
    is_induced_matching,
)

__all__ = [
    "BoundReport",
    "Graph",
    "InducedMatching",
    "ReductionTrace",
    "TheoremViolation",
    "blown_c5",
    "bound_report",
    "bounded_induced_matching",
    "build_graph",
    "components",
    "conjecture_scan",
    "corollary_check",
    "distance",
    "double_h",
    "edges_independent",
    "encode_graph6",
    "encode_report",
    "exact_max_induced_matching",
    "find_reduction",
    "greedy_maximal_induced_matching",
    "is_c5_squared",
    "is_induced_matching",
    "parse_edge_list",
    "parse_graph6",
    "random_max_deg4",
    "triangle_pendants",
    "verify_trace",
]
