"""
Closed-system propagation of continuous-time (chiral) quantum walks

The Hamiltonian is the weight matrix of the graph and `U(t) = exp(-iHt)` is evaluated
through one Hermitian eigendecomposition shared by every time point.
"""

import numpy as np
import scipy.linalg
from loguru import logger

from .. import constants as c
from ..errors import ConvergenceDomain, DecompositionFailure, DimensionMismatch, InvalidTimeGrid
from ..graphs.datatypes import HermitianGraph
from ..utils import logger_wraps
from .datatypes import ProbabilityTrace, SpectralPropagator, StateVector, validate_times


def _fix_phases(eigenvectors: np.ndarray) -> np.ndarray:
    """
    Rotate every column so that its pivot is real and positive

    The pivot is the lowest-index component whose modulus is within `PIVOT_TIE_TOL`
    of the largest in the column.
    """
    columns = np.arange(eigenvectors.shape[1])
    moduli = np.abs(eigenvectors)
    rows = np.argmax(moduli >= moduli.max(axis=0) - c.PIVOT_TIE_TOL, axis=0)
    pivots = eigenvectors[rows, columns]
    return eigenvectors * (pivots.conj() / np.abs(pivots))


@logger_wraps()
def build_propagator(g: HermitianGraph) -> SpectralPropagator:
    """
    Eigendecomposition of the graph Hamiltonian

    Parameters
    ----------
    g : HermitianGraph
        Graph whose weight matrix is the Hamiltonian

    Returns
    -------
    SpectralPropagator
        Ascending eigenvalues and phase-fixed eigenvectors

    Raises
    ------
    DecompositionFailure
        If LAPACK fails or the factorization does not reproduce the Hamiltonian
    """
    try:
        eigenvalues, eigenvectors = scipy.linalg.eigh(g.weights)
    except (np.linalg.LinAlgError, ValueError) as e:
        raise DecompositionFailure(f"eigendecomposition failed: {e}", "graph") from e

    propagator = SpectralPropagator(eigenvalues, _fix_phases(eigenvectors), g.fingerprint)
    if (error := np.max(np.abs(propagator.hamiltonian - g.weights))) > c.HERMITIAN_TOL:
        raise DecompositionFailure(
            f"reconstruction error {error:.3e} exceeds {c.HERMITIAN_TOL}", "graph"
        )
    return propagator


def _check_dimension(p: SpectralPropagator, psi0: StateVector) -> None:
    if p.n_vertices != psi0.n_vertices:
        raise DimensionMismatch(
            f"state has {psi0.n_vertices} amplitudes, graph has {p.n_vertices} vertices",
            "init",
        )


def unitary(p: SpectralPropagator, t: float) -> np.ndarray:
    """
    `U(t) = V diag(exp(-i lambda t)) V^dagger`, the identity at `t = 0`
    """
    if not np.isfinite(t):
        raise InvalidTimeGrid(f"time must be finite, got {t}", "t")
    if t == 0:
        return np.eye(p.n_vertices, dtype=np.complex128)
    V = p.eigenvectors
    return (V * np.exp(-1j * p.eigenvalues * t)) @ V.conj().T


def site_transfer_probabilities(p: SpectralPropagator, t: float) -> np.ndarray:
    """
    Matrix of `|U_ji(t)|^2`, the probability of moving from vertex i to vertex j
    """
    return np.abs(unitary(p, t)) ** 2


def evolve(p: SpectralPropagator, psi0: StateVector, t: float) -> StateVector:
    """
    Evolve a pure state for time `t` (negative `t` runs the walk backwards)

    Raises
    ------
    DimensionMismatch, InvalidTimeGrid
    """
    _check_dimension(p, psi0)
    if not np.isfinite(t):
        raise InvalidTimeGrid(f"time must be finite, got {t}", "t")
    if t == 0:
        return psi0
    V = p.eigenvectors
    coefficients = V.conj().T @ psi0.amplitudes
    return StateVector(V @ (np.exp(-1j * p.eigenvalues * t) * coefficients))


def evolve_amplitudes(
    p: SpectralPropagator, psi0: StateVector, times: np.ndarray
) -> np.ndarray:
    """
    Amplitudes at every time of a grid, shape `(T, n)`

    Each row is computed independently from the factorization, rows at `t = 0` are
    the initial amplitudes exactly.
    """
    _check_dimension(p, psi0)
    times = validate_times(times)
    V = p.eigenvectors
    coefficients = V.conj().T @ psi0.amplitudes
    amplitudes = (np.exp(-1j * np.outer(times, p.eigenvalues)) * coefficients) @ V.T
    amplitudes[times == 0] = psi0.amplitudes
    return amplitudes


@logger_wraps()
def trace_probabilities(
    p: SpectralPropagator, psi0: StateVector, times: np.ndarray
) -> ProbabilityTrace:
    """
    Occupation probability of every vertex over a time grid

    Parameters
    ----------
    p : SpectralPropagator
    psi0 : StateVector
        Initial state
    times : np.ndarray
        Non-empty, strictly increasing times

    Returns
    -------
    ProbabilityTrace
        `probs[k, j - 1] = |<j|psi(t_k)>|^2`
    """
    probs = np.abs(evolve_amplitudes(p, psi0, times)) ** 2
    if (drift := np.max(np.abs(probs.sum(axis=1) - 1))) > c.CLOSED_TRACE_TOL:
        logger.warning(f"closed-system probabilities drift from 1 by {drift:.3e}")
    return ProbabilityTrace(np.asarray(times, dtype=float), probs)


def check_trs(
    p: SpectralPropagator, times, tol: float = c.HERMITIAN_TOL
) -> tuple[bool, float]:
    """
    Check time-reversal symmetry `|U_ji|^2 = |U_ij|^2` at the sampled times

    Returns
    -------
    tuple[bool, float]
        Whether the largest violation is within `tol`, and that violation
    """
    violation = max(
        (
            float(np.max(np.abs(stp - stp.T)))
            for stp in map(lambda t: site_transfer_probabilities(p, t), np.atleast_1d(times))
        ),
        default=0.0,
    )
    return violation <= tol, violation


def taylor_oracle(
    g: HermitianGraph, psi0: StateVector, t: float, terms: int = 120
) -> StateVector:
    """
    Truncated series `sum_{k=0}^{terms} (-iHt)^k / k! psi0`

    Independent of the eigendecomposition and meant for verification only: the
    result is not renormalized. Convergence is enforced through the bound
    `|t| * ||H||_inf < 30`, where the max-row-sum norm bounds the spectral radius.

    Raises
    ------
    ConvergenceDomain
        If fewer than 50 terms are requested or `|t|` is too large for the graph
    DimensionMismatch
    """
    if g.n_vertices != psi0.n_vertices:
        raise DimensionMismatch(
            f"state has {psi0.n_vertices} amplitudes, graph has {g.n_vertices} vertices",
            "init",
        )
    if terms < c.MIN_TAYLOR_TERMS:
        raise ConvergenceDomain(f"at least {c.MIN_TAYLOR_TERMS} terms are required", "terms")
    if (bound := abs(t) * np.max(np.abs(g.weights).sum(axis=1))) >= c.TAYLOR_DOMAIN:
        raise ConvergenceDomain(
            f"|t| * ||H|| = {bound:.3g} outside the series domain (< {c.TAYLOR_DOMAIN})", "t"
        )

    term = np.array(psi0.amplitudes)
    total = np.array(psi0.amplitudes)
    for k in range(1, terms + 1):
        term = (-1j * t / k) * (g.weights @ term)
        total = total + term
    return StateVector(total, checked=False)


def matrix_exponential(g: HermitianGraph, t: float) -> np.ndarray:
    """
    `exp(-iHt)` by scaling and squaring, a second independent reference for `unitary`
    """
    return scipy.linalg.expm(-1j * t * g.weights)
