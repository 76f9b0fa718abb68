"""Grover search for an exact maximum cut, with its own statevector simulator."""

from .circuit import Circuit, Gate, QubitLayout, layout_compact, layout_faithful, resource_stats
from .graph import CutAssignment, CutReport, Graph, brute_force_max_cut, count_cuts_of_size, cut_size, parse_graph
from .solver import SolverConfig, solve_maxcut

__all__ = [
    "Circuit",
    "CutAssignment",
    "CutReport",
    "Gate",
    "Graph",
    "QubitLayout",
    "SolverConfig",
    "brute_force_max_cut",
    "count_cuts_of_size",
    "cut_size",
    "layout_compact",
    "layout_faithful",
    "parse_graph",
    "resource_stats",
    "solve_maxcut",
]
