"""Exact tools for Ryser-extremal 3-partite 3-graphs and home-base partitions."""

from .core import BipartiteGraph, SimpleGraph, TripartiteHypergraph, Vertex, delete_vertices, line_graph, link_graph
from .exact import max_matching_bipartite, min_cover_bipartite, nu_hypergraph, saturating_matching, tau_hypergraph
from .homebase import (
    FRPartition,
    heavy_cover,
    monster_matching,
    recognize_home_base,
    verify_home_base,
)
from .topo import hom_connectivity_of_line

__all__ = [
    "BipartiteGraph",
    "SimpleGraph",
    "TripartiteHypergraph",
    "Vertex",
    "delete_vertices",
    "line_graph",
    "link_graph",
    "max_matching_bipartite",
    "min_cover_bipartite",
    "nu_hypergraph",
    "saturating_matching",
    "tau_hypergraph",
    "FRPartition",
    "heavy_cover",
    "monster_matching",
    "recognize_home_base",
    "verify_home_base",
    "hom_connectivity_of_line",
]

__version__ = "0.1.0"
