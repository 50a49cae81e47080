"""
Constructors for initial states
"""

from typing import Iterable

import numpy as np

from ..errors import IndexOutOfRange, InvalidState
from ..graphs.datatypes import BranchDecomposition
from .datatypes import DensityMatrix, StateVector


def basis_state(n_vertices: int, k: int) -> StateVector:
    """
    The vertex state |k>, 1-based
    """
    if not 1 <= k <= n_vertices:
        raise IndexOutOfRange(f"vertex {k} outside 1..{n_vertices}", "init")
    amplitudes = np.zeros(n_vertices, dtype=np.complex128)
    amplitudes[k - 1] = 1
    return StateVector(amplitudes)


def uniform_superposition(n_vertices: int, vertices: Iterable[int]) -> StateVector:
    """
    Equal-weight superposition of the given (distinct) vertices, e.g. (|1> + |3>) / sqrt(2)
    """
    vertices = list(vertices)
    if not vertices:
        raise InvalidState("at least one vertex is required", "init")
    if len(set(vertices)) != len(vertices):
        raise InvalidState(f"vertices {vertices} are not distinct", "init")
    for k in vertices:
        if not 1 <= k <= n_vertices:
            raise IndexOutOfRange(f"vertex {k} outside 1..{n_vertices}", "init")

    amplitudes = np.zeros(n_vertices, dtype=np.complex128)
    amplitudes[np.array(vertices) - 1] = 1 / np.sqrt(len(vertices))
    return StateVector(amplitudes)


def state_from_amplitudes(amplitudes, normalize: bool = False) -> StateVector:
    amplitudes = np.asarray(amplitudes, dtype=np.complex128)
    if normalize:
        if (norm := np.linalg.norm(amplitudes)) == 0:
            raise InvalidState("cannot normalize the zero vector", "init")
        amplitudes = amplitudes / norm
    return StateVector(amplitudes)


def branch_initial_state(d: BranchDecomposition, n_vertices: int) -> StateVector:
    """
    Uniform superposition over the distinct source vertices of a decomposition

    For the singly merged family this is the superposition of the outermost vertices,
    for the doubly merged family every branch starts at vertex 1 and the state is |1>.
    """
    return uniform_superposition(n_vertices, list(dict.fromkeys(d.source_vertices)))


def pure_density_matrix(psi: StateVector) -> DensityMatrix:
    """
    |psi><psi|
    """
    return DensityMatrix(np.outer(psi.amplitudes, psi.amplitudes.conj()))
