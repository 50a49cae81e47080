"""
Open-system evolution of quantum stochastic walks

The density matrix follows the omega-interpolated Lindblad equation

    d rho / dt = -(1 - omega) i [H, rho]
                 + omega sum_k (L_k rho L_k^dagger - 1/2 {L_k^dagger L_k, rho})

Small graphs are integrated exactly by exponentiating the superoperator acting on
the column-stacked `vec(rho)`; larger graphs use an adaptive Runge-Kutta (4/5)
integrator on the matrix equation.
"""

from typing import Iterable, Literal

import numpy as np
import scipy.integrate
import scipy.linalg
import toolz as tz
from loguru import logger

from .. import constants as c
from ..config import auto_match_config
from ..errors import (
    ConfigError,
    DimensionMismatch,
    IntegrationFailure,
    InvalidParams,
    TooLarge,
)
from ..graphs.datatypes import HermitianGraph
from ..utils import logger_wraps
from .datatypes import (
    DensityMatrix,
    JumpOperator,
    LindbladSet,
    ProbabilityTrace,
    validate_times,
)


def _single_entry(n: int, row: int, col: int, value: float) -> np.ndarray:
    matrix = np.zeros((n, n), dtype=np.complex128)
    matrix[row, col] = value
    return matrix


def _transfer_operators(g: HermitianGraph, keep) -> list[np.ndarray]:
    # L = sqrt|g[u][v]| |v><u| for every ordered pair (u, v) accepted by `keep`
    rows, cols = np.nonzero(g.weights)
    return [
        _single_entry(g.n_vertices, v, u, np.sqrt(np.abs(g.weights[u, v])))
        for u, v in zip(rows, cols)
        if keep(u, v)
    ]


@logger_wraps()
def standard_lindblads(
    g: HermitianGraph,
    include: Iterable[str],
    dissipation_direction: Literal["lower", "higher"] = "lower",
) -> list[JumpOperator]:
    """
    Jump operators of the standard decoherence channels of a graph

    Parameters
    ----------
    g : HermitianGraph
    include : Iterable[str]
        Any of "scattering" (one operator per directed edge), "dephasing" (one
        projector per vertex) and "dissipation" (one operator per edge, decaying
        towards the lower- or higher-indexed end)
    dissipation_direction : "lower" | "higher"
        Which end of an edge dissipation decays towards

    Returns
    -------
    list[JumpOperator]
        Operators in the order scattering, dephasing, dissipation
    """
    include = set(include)
    if unknown := include - set(c.LINDBLAD_KINDS):
        raise ConfigError(f"unknown decoherence kinds {sorted(unknown)}", "kinds")
    if dissipation_direction not in ("lower", "higher"):
        raise ConfigError(
            f"dissipation direction must be 'lower' or 'higher', got '{dissipation_direction}'",
            "dissipation_direction",
        )

    n = g.n_vertices
    by_kind = {
        "scattering": lambda: _transfer_operators(g, lambda u, v: True),
        "dephasing": lambda: [_single_entry(n, i, i, 1.0) for i in range(n)],
        "dissipation": lambda: _transfer_operators(
            g, (lambda u, v: u > v) if dissipation_direction == "lower" else (lambda u, v: u < v)
        ),
    }
    return [
        JumpOperator(matrix, kind)
        for kind in c.LINDBLAD_KINDS
        if kind in include
        for matrix in by_kind[kind]()
    ]


@auto_match_config(prefixes=["qsw"])
def make_lindblad_set(
    g: HermitianGraph,
    omega: float = 0.1,
    kinds: Iterable[str] = c.LINDBLAD_KINDS,
    dissipation_direction: Literal["lower", "higher"] = "lower",
) -> LindbladSet:
    return LindbladSet(tuple(standard_lindblads(g, kinds, dissipation_direction)), omega)


def _check_dimensions(g: HermitianGraph, L: LindbladSet) -> None:
    if L.n_vertices is not None and L.n_vertices != g.n_vertices:
        raise DimensionMismatch(
            f"jump operators act on {L.n_vertices} vertices, graph has {g.n_vertices}",
            "operators",
        )


def vec(rho: np.ndarray) -> np.ndarray:
    """
    Column-stacking vectorization
    """
    return np.reshape(rho, -1, order="F")


def unvec(vector: np.ndarray, n: int) -> np.ndarray:
    return np.reshape(vector, (n, n), order="F")


@logger_wraps()
def build_superoperator(g: HermitianGraph, L: LindbladSet) -> np.ndarray:
    """
    Matrix `M` with `d vec(rho) / dt = M vec(rho)`, `vec` stacking columns

    Uses `vec(A X B) = (B^T kron A) vec(X)`:

        M = -i (1 - omega) (I kron H - H^T kron I)
            + omega sum_k (conj(L_k) kron L_k
                           - 1/2 I kron L_k^dagger L_k - 1/2 (L_k^dagger L_k)^T kron I)

    Raises
    ------
    TooLarge
        For graphs with more than 64 vertices
    DimensionMismatch
    """
    n = g.n_vertices
    if n > c.MAX_SUPEROPERATOR_VERTICES:
        raise TooLarge(
            f"superoperator of a {n}-vertex graph exceeds {c.MAX_SUPEROPERATOR_VERTICES} vertices",
            "graph",
        )
    _check_dimensions(g, L)

    identity = np.eye(n, dtype=np.complex128)
    H = g.weights
    coherent = -1j * (np.kron(identity, H) - np.kron(H.T, identity))
    if not L.operators:
        return (1 - L.omega) * coherent

    decay = sum(Lk.conj().T @ Lk for Lk in L.matrices)
    jumps = sum(np.kron(Lk.conj(), Lk) for Lk in L.matrices)
    dissipator = jumps - 0.5 * (np.kron(identity, decay) + np.kron(decay.T, identity))
    return (1 - L.omega) * coherent + L.omega * dissipator


def lindblad_rhs(g: HermitianGraph, L: LindbladSet, rho: np.ndarray) -> np.ndarray:
    """
    Right-hand side of the master equation evaluated directly on the matrix `rho`
    """
    _check_dimensions(g, L)
    H = g.weights
    rhs = -1j * (1 - L.omega) * (H @ rho - rho @ H)
    for Lk in L.matrices:
        decay = Lk.conj().T @ Lk
        rhs = rhs + L.omega * (Lk @ rho @ Lk.conj().T - 0.5 * (decay @ rho + rho @ decay))
    return rhs


def _is_uniform(times: np.ndarray) -> bool:
    steps = np.diff(times)
    return steps.size > 0 and np.allclose(steps, steps[0], rtol=1e-9, atol=0)


def _evolve_exact(
    g: HermitianGraph, L: LindbladSet, rho0: np.ndarray, times: np.ndarray
) -> np.ndarray:
    n = g.n_vertices
    M = build_superoperator(g, L)
    start = scipy.linalg.expm(M * times[0]) @ vec(rho0) if times[0] else vec(rho0)

    if _is_uniform(times):
        step = scipy.linalg.expm(M * (times[1] - times[0]))
        vectors = tz.pipe(
            tz.iterate(lambda v: step @ v, start),
            lambda it: tz.take(times.size, it),
            list,
        )
    else:
        vectors = [start] + [scipy.linalg.expm(M * t) @ vec(rho0) for t in times[1:]]
    return np.stack([unvec(v, n) for v in vectors])


def _evolve_adaptive(
    g: HermitianGraph,
    L: LindbladSet,
    rho0: np.ndarray,
    times: np.ndarray,
    atol: float,
    rtol: float,
) -> np.ndarray:
    n = g.n_vertices
    if times[-1] == 0:
        return rho0[np.newaxis]

    solution = scipy.integrate.solve_ivp(
        lambda _, y: vec(lindblad_rhs(g, L, unvec(y, n))),
        t_span=(0.0, times[-1]),
        y0=vec(rho0),
        method="RK45",
        t_eval=times,
        atol=atol,
        rtol=rtol,
    )
    if solution.status != 0:
        raise IntegrationFailure(f"adaptive integration failed: {solution.message}", "qsw")
    return np.stack([unvec(y, n) for y in solution.y.T])


def _check_density_matrices(rhos: np.ndarray) -> float:
    """
    Validate trace, Hermiticity and positivity at every time, return the smallest eigenvalue
    """
    traces = np.trace(rhos, axis1=1, axis2=2)
    if (drift := np.max(np.abs(traces - 1))) > c.OPEN_TRACE_TOL:
        raise IntegrationFailure(f"trace drifted from 1 by {drift:.3e}", "qsw")
    hermitian_error = np.max(np.abs(rhos - np.conj(np.swapaxes(rhos, 1, 2))))
    if hermitian_error > c.HERMITIAN_TOL:
        raise IntegrationFailure(
            f"density matrix lost Hermiticity (error {hermitian_error:.3e})", "qsw"
        )

    hermitian_part = 0.5 * (rhos + np.conj(np.swapaxes(rhos, 1, 2)))
    min_eigenvalue = float(np.min(np.linalg.eigvalsh(hermitian_part)))
    if min_eigenvalue < -c.PSD_TOL:
        raise IntegrationFailure(
            f"density matrix lost positivity (eigenvalue {min_eigenvalue:.3e})", "qsw"
        )
    if min_eigenvalue < -c.NORM_TOL:
        # reported, never clamped
        logger.warning(f"density matrix eigenvalue {min_eigenvalue:.3e} below zero")
    return min_eigenvalue


@logger_wraps(level="INFO")
@auto_match_config(prefixes=["qsw"])
def qsw_evolve(
    g: HermitianGraph,
    L: LindbladSet,
    rho0: DensityMatrix,
    times,
    keep_density_matrices: bool = False,
    exact_max_vertices: int = c.EXACT_MAX_VERTICES,
    atol: float = c.ADAPTIVE_ATOL,
    rtol: float = c.ADAPTIVE_RTOL,
) -> ProbabilityTrace:
    """
    Evolve a density matrix under the omega-interpolated Lindblad equation

    Parameters
    ----------
    g : HermitianGraph
        Graph whose weight matrix is the Hamiltonian
    L : LindbladSet
        Jump operators and the interpolation weight omega
    rho0 : DensityMatrix
        State at `t = 0`
    times : array-like
        Non-negative, strictly increasing output times
    keep_density_matrices : bool
        Whether to keep the full `rho(t)` in the returned trace
    exact_max_vertices : int
        Graphs up to this size are integrated by exponentiating the superoperator
    atol, rtol : float
        Tolerances of the adaptive integrator used above `exact_max_vertices`

    Returns
    -------
    ProbabilityTrace
        Populations `Re rho(t)[j][j]` at every time

    Raises
    ------
    DimensionMismatch
    InvalidTimeGrid
    IntegrationFailure
        If the integrator fails or the state leaves the set of density matrices
    """
    if rho0.n_vertices != g.n_vertices:
        raise DimensionMismatch(
            f"initial state has dimension {rho0.n_vertices}, graph has {g.n_vertices} vertices",
            "init",
        )
    _check_dimensions(g, L)
    times = validate_times(times, allow_negative=False)
    if exact_max_vertices < 1:
        raise InvalidParams("exact_max_vertices must be positive", "exact_max_vertices")

    if g.n_vertices <= exact_max_vertices:
        rhos = _evolve_exact(g, L, np.array(rho0.rho), times)
    else:
        logger.debug(f"adaptive integration of a {g.n_vertices}-vertex walk")
        rhos = _evolve_adaptive(g, L, np.array(rho0.rho), times, atol, rtol)

    min_eigenvalue = _check_density_matrices(rhos)
    return ProbabilityTrace(
        times,
        np.real(np.diagonal(rhos, axis1=1, axis2=2)),
        density_matrices=rhos if keep_density_matrices else None,
        min_eigenvalue=min_eigenvalue,
    )


def classical_rate_matrix(L: LindbladSet) -> np.ndarray:
    """
    Generator `R` of the population dynamics at `omega = 1`

    `R[v, u] = sum_k |L_k[v, u]|^2` for `v != u` and columns sum to zero. Exact for jump
    operators with a single non-zero entry, such as the standard channels.
    """
    if not L.operators:
        raise InvalidParams("no jump operators", "operators")
    rates = sum(np.abs(Lk) ** 2 for Lk in L.matrices)
    np.fill_diagonal(rates, 0)
    return rates - np.diag(rates.sum(axis=0))


def stationary_distribution(L: LindbladSet) -> np.ndarray:
    """
    Null vector of the classical rate matrix, normalized to a probability distribution

    Raises
    ------
    InvalidParams
        If the stationary distribution is not unique (disconnected rates)
    """
    kernel = scipy.linalg.null_space(classical_rate_matrix(L))
    if kernel.shape[1] != 1:
        raise InvalidParams(
            f"rate matrix has a {kernel.shape[1]}-dimensional null space", "operators"
        )
    distribution = np.real(kernel[:, 0])
    return distribution / distribution.sum()
