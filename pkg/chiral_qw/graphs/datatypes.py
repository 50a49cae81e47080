"""
Datatype definitions for complex-weighted graphs and their branch decompositions.

Vertex labels are 1-based everywhere outside of array indexing.
"""

import hashlib
from dataclasses import dataclass, field
from typing import Annotated

import numpy as np

from ..errors import InvalidDecomposition, InvalidGraph, InvalidParams

Vertex = Annotated[int, "1-based vertex label"]
Edge = tuple[Vertex, Vertex]
WeightedEdge = tuple[Vertex, Vertex, complex]


@dataclass(frozen=True, eq=False)
class HermitianGraph:
    """
    Graph with complex hopping amplitudes stored as a dense Hermitian matrix

    The weight matrix is copied on construction, checked to be exactly Hermitian
    with a zero diagonal and made read-only. It is used directly as the
    Hamiltonian of the walk.
    """

    weights: np.ndarray

    def __post_init__(self):
        weights = np.array(self.weights, dtype=np.complex128)
        if weights.ndim != 2 or weights.shape[0] != weights.shape[1]:
            raise InvalidGraph(f"expected a square matrix, got {weights.shape}", "weights")
        if weights.shape[0] < 1:
            raise InvalidGraph("a graph needs at least one vertex", "n_vertices")
        if not np.all(np.isfinite(weights)):
            raise InvalidGraph("weights must be finite", "weights")
        if np.any(np.diag(weights) != 0):
            raise InvalidGraph("self-loops are not allowed (non-zero diagonal)", "weights")
        if not np.array_equal(weights, weights.conj().T):
            raise InvalidGraph("weights must be exactly Hermitian", "weights")
        weights.flags.writeable = False
        object.__setattr__(self, "weights", weights)

    @property
    def n_vertices(self) -> int:
        return self.weights.shape[0]

    @property
    def fingerprint(self) -> str:
        """
        Short SHA-256 digest of the weights, identifies the graph in output metadata
        """
        return hashlib.sha256(self.weights.tobytes()).hexdigest()[:16]

    def __eq__(self, other) -> bool:
        return isinstance(other, HermitianGraph) and np.array_equal(
            self.weights, other.weights
        )

    def __hash__(self) -> int:
        return hash(self.fingerprint)


@dataclass(frozen=True)
class GraphFamilyParams:
    """
    Parameters of the merged-branch families: `b` branches of `n` vertices each
    """

    b: int
    n: int

    def __post_init__(self):
        if not (isinstance(self.b, int) and isinstance(self.n, int)):
            raise InvalidParams("b and n must be integers", "b, n")
        if self.b < 1:
            raise InvalidParams(f"b must be positive, got {self.b}", "b")
        if self.n < 2:
            raise InvalidParams(f"n must be at least 2, got {self.n}", "n")

    @property
    def type1_vertices(self) -> int:
        return (self.n - 1) * self.b + 1

    @property
    def type2_vertices(self) -> int:
        return (self.n - 2) * self.b + 2


def _path_edges(path: tuple[int, ...]) -> list[Edge]:
    return list(zip(path[:-1], path[1:]))


@dataclass(frozen=True)
class BranchDecomposition:
    """
    Equal-length, edge-disjoint paths ending at a common merge vertex

    Each branch is stored in traversal order, from its source vertex to the
    merge vertex. The invariants that do not need the host graph are checked on
    construction, `validate_decomposition` checks the rest against a graph.
    """

    branches: tuple[tuple[Vertex, ...], ...]
    merge_vertex: Vertex
    source_vertices: tuple[Vertex, ...] = field(default=())

    def __post_init__(self):
        branches = tuple(tuple(int(v) for v in branch) for branch in self.branches)
        object.__setattr__(self, "branches", branches)
        object.__setattr__(
            self,
            "source_vertices",
            tuple(self.source_vertices) or tuple(branch[0] for branch in branches),
        )

        if not branches:
            raise InvalidDecomposition("at least one branch is required", "branches")
        if (lowest := min((v for branch in branches for v in branch), default=1)) < 1:
            raise InvalidDecomposition(
                f"vertex labels start at 1, got {lowest}", "branches"
            )
        if len({len(branch) for branch in branches}) != 1 or len(branches[0]) < 2:
            raise InvalidDecomposition(
                "all branches must have the same number (>= 2) of vertices", "branches"
            )
        for p, branch in enumerate(branches, start=1):
            if len(set(branch)) != len(branch):
                raise InvalidDecomposition(f"branch {p} revisits a vertex", "branches")
            if branch[-1] != self.merge_vertex:
                raise InvalidDecomposition(
                    f"branch {p} ends at {branch[-1]}, not at {self.merge_vertex}",
                    "merge_vertex",
                )
        if self.source_vertices != tuple(branch[0] for branch in branches):
            raise InvalidDecomposition(
                "source vertices must be the first vertex of each branch",
                "source_vertices",
            )

        undirected = [
            frozenset(edge) for branch in branches for edge in _path_edges(branch)
        ]
        if len(set(undirected)) != len(undirected):
            raise InvalidDecomposition("branches must not share edges", "branches")

    @property
    def n_branches(self) -> int:
        return len(self.branches)

    @property
    def branch_length(self) -> int:
        return len(self.branches[0])

    def branch_edges(self, p: int) -> list[Edge]:
        """
        Edges of branch `p` (1-based) oriented in traversal order
        """
        return _path_edges(self.branches[p - 1])

    @property
    def edges(self) -> set[frozenset[int]]:
        return {
            frozenset(edge)
            for p in range(1, self.n_branches + 1)
            for edge in self.branch_edges(p)
        }
