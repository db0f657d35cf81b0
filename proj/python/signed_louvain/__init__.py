"""Community detection in signed networks.

Graphs carry a positive and a negative layer. ``optimize`` runs one of the
Louvain-style engines (classic, relaxed, or the hop-neighborhood engine)
and returns a ``RunReport``.
"""

from ._core import (
    EmptyNetworkError,
    Layer,
    ParseError,
    RunReport,
    SignedGraph,
    __version__,
    generate_ssbm,
    graph_stats,
    hop_neighbors,
    load_edge_list,
    move_gain,
    nmi,
    optimize,
    pairwise_term,
    parse_edge_list,
    signed_modularity,
)

__all__ = [
    "EmptyNetworkError",
    "Layer",
    "ParseError",
    "RunReport",
    "SignedGraph",
    "__version__",
    "generate_ssbm",
    "graph_stats",
    "hop_neighbors",
    "load_edge_list",
    "move_gain",
    "nmi",
    "optimize",
    "pairwise_term",
    "parse_edge_list",
    "signed_modularity",
]
