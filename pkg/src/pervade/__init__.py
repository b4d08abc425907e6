"""Toolkit for pervasive-subgraph experiments: exact colouring, induced
containment, Burling graphs, witness checkers, extraction and string graphs."""

from .graph import Budget, BudgetExceeded, Graph
from .coloring import ChromaticResult, ball_chromatic, chromatic_number, clique_number
from .verdict import Status, Verdict

__all__ = [
    "Budget",
    "BudgetExceeded",
    "ChromaticResult",
    "Graph",
    "Status",
    "Verdict",
    "ball_chromatic",
    "chromatic_number",
    "clique_number",
]
__version__ = "0.1.0"
