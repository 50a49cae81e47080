"""
Gauge relation between chiral and unphased walks on a path

On a path graph the phases can be moved into the basis: if `alpha_j(t)` are the
amplitudes of the unphased walk started at vertex `k`, the phased walk has amplitudes

    beta_j = exp(-i theta_j) alpha_j,   theta_j = sum_{l=k}^{j-1} alpha_l    (j > k)
    beta_j = exp(+i theta_j) alpha_j,   theta_j = sum_{l=j}^{k-1} alpha_l    (j < k)

where `alpha_l` is the phase on the edge `(l, l + 1)`. Occupation probabilities are
therefore unchanged by phases on a path.
"""

import numpy as np

from ..errors import IndexOutOfRange, PhaseOnNonEdge
from .phases import ChiralPhaseAssignment


def path_gauge(
    n_vertices: int, a: ChiralPhaseAssignment, start_vertex: int = 1
) -> np.ndarray:
    """
    Diagonal of the gauge transformation for a path `1 - 2 - ... - n`

    Returns `exp(-i theta_j)` for every vertex, with `theta_k = 0` at the start vertex.

    Raises
    ------
    PhaseOnNonEdge
        If a phased pair is not a path edge `(l, l + 1)`
    IndexOutOfRange
        If `start_vertex` is not a vertex of the path
    """
    if not 1 <= start_vertex <= n_vertices:
        raise IndexOutOfRange(
            f"start vertex {start_vertex} outside 1..{n_vertices}", "start_vertex"
        )
    for i, j in a.phases:
        if abs(i - j) != 1 or max(i, j) > n_vertices or min(i, j) < 1:
            raise PhaseOnNonEdge(f"({i}, {j}) is not an edge of the path", "phases")

    edge_phases = np.array([a.oriented(l, l + 1) for l in range(1, n_vertices)])
    theta = np.concatenate([[0.0], np.cumsum(edge_phases)])
    return np.exp(-1j * (theta - theta[start_vertex - 1]))


def gauge_amplitudes(
    alpha_trace: np.ndarray, a: ChiralPhaseAssignment, start_vertex: int = 1
) -> np.ndarray:
    """
    Map amplitudes of the unphased path walk onto those of the phased walk

    Parameters
    ----------
    alpha_trace : np.ndarray
        Amplitudes indexed by path vertex along the last axis, either a single state
        of shape `(n,)` or a stack of states of shape `(..., n)`
    a : ChiralPhaseAssignment
        Phases on the path edges
    start_vertex : int
        Vertex `k` the walk started from, where the two walks agree

    Returns
    -------
    np.ndarray
        Amplitudes of the phased walk, same shape as `alpha_trace`
    """
    alpha_trace = np.asarray(alpha_trace, dtype=np.complex128)
    return alpha_trace * path_gauge(alpha_trace.shape[-1], a, start_vertex)
