"""
Structural queries on Hermitian graphs
"""

from itertools import permutations

import numpy as np

from ..errors import InvalidDecomposition, InvalidParams
from .datatypes import BranchDecomposition, Edge, HermitianGraph


def edge_list(g: HermitianGraph) -> list[Edge]:
    """
    Undirected edges `(i, j)` with `i < j`, 1-based, in row-major order
    """
    rows, cols = np.nonzero(np.triu(g.weights))
    return [(int(i) + 1, int(j) + 1) for i, j in zip(rows, cols)]


def n_edges(g: HermitianGraph) -> int:
    return len(edge_list(g))


def degrees(g: HermitianGraph) -> np.ndarray:
    """
    Degree of every vertex, index 0 holds vertex 1
    """
    return np.count_nonzero(g.weights, axis=1)


def is_isomorphic(g1: HermitianGraph, g2: HermitianGraph, max_vertices: int = 8) -> bool:
    """
    Brute-force search for a vertex permutation mapping `g1` onto `g2`

    Compares the edge patterns only (weights are ignored). Intended for checking
    small constructions, refuses graphs above `max_vertices`.
    """
    if g1.n_vertices != g2.n_vertices:
        return False
    if g1.n_vertices > max_vertices:
        raise InvalidParams(
            f"brute-force isomorphism limited to {max_vertices} vertices", "g1"
        )
    a1, a2 = g1.weights != 0, g2.weights != 0
    if sorted(a1.sum(axis=1)) != sorted(a2.sum(axis=1)):
        return False
    return any(
        np.array_equal(a1[np.ix_(perm, perm)], a2)
        for perm in map(list, permutations(range(g1.n_vertices)))
    )


def validate_decomposition(g: HermitianGraph, d: BranchDecomposition) -> None:
    """
    Check that every branch edge of `d` is an edge of `g`

    Raises
    ------
    InvalidDecomposition
    """
    for p in range(1, d.n_branches + 1):
        for u, v in d.branch_edges(p):
            if not (1 <= u <= g.n_vertices and 1 <= v <= g.n_vertices):
                raise InvalidDecomposition(
                    f"branch {p} uses vertex outside 1..{g.n_vertices}", "branches"
                )
            if g.weights[u - 1, v - 1] == 0:
                raise InvalidDecomposition(
                    f"branch {p} edge ({u}, {v}) is not an edge of the graph", "branches"
                )


def restrict_to_decomposition(g: HermitianGraph, d: BranchDecomposition) -> HermitianGraph:
    """
    Keep only the weights of edges claimed by the decomposition
    """
    validate_decomposition(g, d)
    mask = np.zeros(g.weights.shape, dtype=bool)
    for edge in d.edges:
        u, v = sorted(edge)
        mask[u - 1, v - 1] = mask[v - 1, u - 1] = True
    return HermitianGraph(np.where(mask, g.weights, 0))
