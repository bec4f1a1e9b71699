"""Games with the SumToInfinity objective: universal graphs, morphisms and solvers."""

from .core import Arena, Edge, LabeledGraph, Owner, SumGamesError, parse_labeled_graph, serialize, to_dot
from .objective import satisfies
from .universal import TOP

__all__ = [
    "TOP",
    "Arena",
    "Edge",
    "LabeledGraph",
    "Owner",
    "SumGamesError",
    "parse_labeled_graph",
    "satisfies",
    "serialize",
    "to_dot",
]
