"""
Constructors for Hermitian graphs and the merged-branch graph families
"""

from itertools import combinations
from typing import Iterable

import numpy as np
import toolz as tz
from toolz import curried

from ..errors import (
    DuplicateEdge,
    IndexOutOfRange,
    InvalidBranchIndex,
    InvalidDecomposition,
    InvalidParams,
    SelfLoop,
)
from ..utils import logger_wraps
from .datatypes import BranchDecomposition, GraphFamilyParams, HermitianGraph, WeightedEdge


@logger_wraps()
def new_graph(n_vertices: int, edges: Iterable[WeightedEdge]) -> HermitianGraph:
    """
    Build a Hermitian graph from 1-based weighted edges

    Each `(i, j, w)` sets `weights[i][j] = w` and `weights[j][i] = conj(w)`.

    Parameters
    ----------
    n_vertices : int
        Number of vertices, at least 1
    edges : Iterable[tuple[int, int, complex]]
        Weighted edges, at most one per unordered pair

    Raises
    ------
    IndexOutOfRange, SelfLoop, DuplicateEdge
    """
    if n_vertices < 1:
        raise IndexOutOfRange(f"n_vertices must be positive, got {n_vertices}", "n_vertices")

    weights = np.zeros((n_vertices, n_vertices), dtype=np.complex128)
    seen: set[frozenset[int]] = set()
    for i, j, w in edges:
        if not (1 <= i <= n_vertices and 1 <= j <= n_vertices):
            raise IndexOutOfRange(
                f"edge ({i}, {j}) outside vertices 1..{n_vertices}", "edges"
            )
        if i == j:
            raise SelfLoop(f"edge ({i}, {j}) is a self-loop", "edges")
        if (pair := frozenset((i, j))) in seen:
            raise DuplicateEdge(f"edge ({i}, {j}) given more than once", "edges")
        seen.add(pair)
        weights[i - 1, j - 1] = complex(w)
        weights[j - 1, i - 1] = complex(w).conjugate()
    return HermitianGraph(weights)


def path_graph(n: int) -> HermitianGraph:
    """
    Path 1 - 2 - ... - n with unit weights
    """
    if n < 1:
        raise InvalidParams(f"n must be positive, got {n}", "n")
    return new_graph(n, [(k, k + 1, 1) for k in range(1, n)])


def cycle_graph(n: int) -> HermitianGraph:
    """
    Ring 1 - 2 - ... - n - 1 with unit weights
    """
    if n < 3:
        raise InvalidParams(f"a cycle needs at least 3 vertices, got {n}", "n")
    return new_graph(n, [(k, k % n + 1, 1) for k in range(1, n + 1)])


def complete_graph(n: int) -> HermitianGraph:
    if n < 1:
        raise InvalidParams(f"n must be positive, got {n}", "n")
    return new_graph(n, [(i, j, 1) for i, j in combinations(range(1, n + 1), 2)])


def passive_edge_graph() -> tuple[HermitianGraph, BranchDecomposition]:
    """
    Six-vertex graph whose edge (1, 2) plays no part in suppressing transfer to 3

    Paths 1 - 3 and 2 - 3 form the decomposition, the triangle 4 - 5 - 6 hangs off 3.
    """
    graph = new_graph(
        6,
        [(1, 2, 1), (1, 3, 1), (2, 3, 1), (3, 4, 1), (4, 5, 1), (4, 6, 1), (5, 6, 1)],
    )
    return graph, BranchDecomposition(branches=((1, 3), (2, 3)), merge_vertex=3)


def _decomposition_edges(branches: list[tuple[int, ...]]) -> list[WeightedEdge]:
    return tz.pipe(
        branches,
        curried.mapcat(lambda branch: zip(branch[:-1], branch[1:])),
        curried.map(lambda edge: (*edge, 1)),
        list,
    )


@logger_wraps()
def merged_star_type1(
    params: GraphFamilyParams,
) -> tuple[HermitianGraph, BranchDecomposition]:
    """
    `b` paths of `n` vertices joined at their end vertex N = (n - 1)b + 1

    Branch p occupies vertices (n-1)(p-1)+1 ... (n-1)p, its last vertex is
    adjacent to N and its first vertex (n-1)(p-1)+1 is its source.

    Parameters
    ----------
    params : GraphFamilyParams
        b >= 1 branches of n >= 2 vertices

    Returns
    -------
    tuple[HermitianGraph, BranchDecomposition]
        The graph and its branches, each running from source to N
    """
    b, n = params.b, params.n
    merge = params.type1_vertices
    branches = [
        tuple(range((n - 1) * (p - 1) + 1, (n - 1) * p + 1)) + (merge,)
        for p in range(1, b + 1)
    ]
    return (
        new_graph(merge, _decomposition_edges(branches)),
        BranchDecomposition(branches=tuple(branches), merge_vertex=merge),
    )


@logger_wraps()
def merged_star_type2(
    params: GraphFamilyParams,
) -> tuple[HermitianGraph, BranchDecomposition]:
    """
    Type-1 family with the outer vertices of all branches merged into vertex 1

    Branch p runs 1 -> (n-2)(p-1)+2 ... (n-2)p+1 -> (n-2)b+2, so every branch
    is an internally disjoint path of `n` vertices between the two merged ends.

    Parameters
    ----------
    params : GraphFamilyParams
        b >= 2 branches of n >= 3 vertices (both merged ends must be distinct)
    """
    b, n = params.b, params.n
    if b < 2 or n < 3:
        raise InvalidParams(
            f"the doubly merged family needs b >= 2 and n >= 3, got b={b}, n={n}", "b, n"
        )
    target = params.type2_vertices
    branches = [
        (1,) + tuple(range((n - 2) * (p - 1) + 2, (n - 2) * p + 2)) + (target,)
        for p in range(1, b + 1)
    ]
    return (
        new_graph(target, _decomposition_edges(branches)),
        BranchDecomposition(branches=tuple(branches), merge_vertex=target),
    )


def even_cycle(n: int) -> tuple[HermitianGraph, BranchDecomposition]:
    """
    Even cycle C_n labelled as a two-branch doubly merged graph

    Vertex 1 sits opposite vertex n, C_4 comes out as 1 - 2 - 4 - 3 - 1.
    """
    if n < 4 or n % 2:
        raise InvalidParams(f"expected an even cycle length >= 4, got {n}", "n")
    return merged_star_type2(GraphFamilyParams(b=2, n=n // 2 + 1))


@tz.curry
@logger_wraps()
def spanning_branch_subgraph(
    g: HermitianGraph, d: BranchDecomposition, p: int
) -> HermitianGraph:
    """
    Spanning subgraph keeping only the edges of branch `p` (1-based)

    All vertices are kept, so the subgraph Hamiltonians of all branches sum to
    the host graph restricted to the decomposition's edges.

    Raises
    ------
    InvalidBranchIndex
        If `p` is not in 1..b
    InvalidDecomposition
        If a branch edge is not an edge of `g`
    """
    if not 1 <= p <= d.n_branches:
        raise InvalidBranchIndex(f"branch {p} not in 1..{d.n_branches}", "p")

    weights = np.zeros_like(g.weights)
    for u, v in d.branch_edges(p):
        if not (u <= g.n_vertices and v <= g.n_vertices) or g.weights[u - 1, v - 1] == 0:
            raise InvalidDecomposition(f"({u}, {v}) is not an edge of the graph", "d")
        weights[u - 1, v - 1] = g.weights[u - 1, v - 1]
        weights[v - 1, u - 1] = g.weights[v - 1, u - 1]
    return HermitianGraph(weights)
