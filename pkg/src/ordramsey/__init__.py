"""Ordered Ramsey numbers: exact solving, constructions, embedders and certificates.

Logarithms are base 2 throughout.
"""

from .core import (
    BLUE,
    RED,
    EdgeColoring,
    Embedding,
    GraphError,
    OrderedGraph,
    SizeLimitError,
    find_monochromatic_copy,
    find_ordered_copy,
    graph_stats,
)
from .solver import (
    Certificate,
    RamseyQuery,
    brute_force_oracle,
    decide,
    ramsey_number,
    sat_export,
    verify_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "BLUE",
    "RED",
    "Certificate",
    "EdgeColoring",
    "Embedding",
    "GraphError",
    "OrderedGraph",
    "RamseyQuery",
    "SizeLimitError",
    "brute_force_oracle",
    "decide",
    "find_monochromatic_copy",
    "find_ordered_copy",
    "graph_stats",
    "ramsey_number",
    "sat_export",
    "verify_certificate",
]
