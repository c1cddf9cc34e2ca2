"""Theta functions, matrix *-algebras of graphs, and clique-coclique verification."""

from thetalg.config import DEFAULT_TOLERANCES, Tolerances
from thetalg.graphs import (
    Graph,
    complement,
    is_connected,
    named_graph,
    parse_graph6,
    write_graph6,
)

__all__ = [
    "DEFAULT_TOLERANCES",
    "Graph",
    "Tolerances",
    "complement",
    "is_connected",
    "named_graph",
    "parse_graph6",
    "write_graph6",
]

__version__ = "0.1.0"
