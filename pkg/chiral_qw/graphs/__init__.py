from .construction import (
    complete_graph,
    cycle_graph,
    even_cycle,
    merged_star_type1,
    merged_star_type2,
    new_graph,
    passive_edge_graph,
    path_graph,
    spanning_branch_subgraph,
)
from .datatypes import BranchDecomposition, GraphFamilyParams, HermitianGraph
from .io import graph_from_dict, graph_to_dict, load_graph, save_graph
from .properties import (
    degrees,
    edge_list,
    is_isomorphic,
    n_edges,
    restrict_to_decomposition,
    validate_decomposition,
)

__all__ = [
    "HermitianGraph",
    "GraphFamilyParams",
    "BranchDecomposition",
    "new_graph",
    "path_graph",
    "cycle_graph",
    "complete_graph",
    "even_cycle",
    "passive_edge_graph",
    "merged_star_type1",
    "merged_star_type2",
    "spanning_branch_subgraph",
    "edge_list",
    "n_edges",
    "degrees",
    "is_isomorphic",
    "validate_decomposition",
    "restrict_to_decomposition",
    "graph_to_dict",
    "graph_from_dict",
    "save_graph",
    "load_graph",
]
