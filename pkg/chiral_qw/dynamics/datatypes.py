"""
Datatype definitions for walk states, propagators, probability traces and
decoherence operators.
"""

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .. import constants as c
from ..errors import DimensionMismatch, InvalidOmega, InvalidParams, InvalidState, InvalidTimeGrid

LindbladKind = Literal["scattering", "dephasing", "dissipation"]


def _readonly(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


@dataclass(frozen=True, eq=False)
class StateVector:
    """
    Pure state of the walker in the vertex basis

    The norm is checked on construction unless `checked` is False, which is only
    used for the unnormalized output of the truncated-series oracle.
    """

    amplitudes: np.ndarray
    checked: bool = field(default=True, repr=False)

    def __post_init__(self):
        amplitudes = np.array(self.amplitudes, dtype=np.complex128)
        if amplitudes.ndim != 1 or amplitudes.size < 1:
            raise InvalidState(
                f"expected a non-empty vector, got shape {amplitudes.shape}", "amplitudes"
            )
        if not np.all(np.isfinite(amplitudes)):
            raise InvalidState("amplitudes must be finite", "amplitudes")
        if self.checked and abs(np.vdot(amplitudes, amplitudes).real - 1) > c.NORM_TOL:
            raise InvalidState(
                f"state is not normalized (norm^2 = {np.vdot(amplitudes, amplitudes).real})",
                "amplitudes",
            )
        object.__setattr__(self, "amplitudes", _readonly(amplitudes))

    @property
    def n_vertices(self) -> int:
        return self.amplitudes.size

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


@dataclass(frozen=True, eq=False)
class SpectralPropagator:
    """
    Eigendecomposition `H = V diag(eigenvalues) V^dagger` of a graph Hamiltonian

    Eigenvalues are ascending and each eigenvector has its largest-modulus
    component real and positive.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    fingerprint: str = ""

    def __post_init__(self):
        object.__setattr__(self, "eigenvalues", _readonly(np.array(self.eigenvalues, float)))
        object.__setattr__(
            self, "eigenvectors", _readonly(np.array(self.eigenvectors, np.complex128))
        )

    @property
    def n_vertices(self) -> int:
        return self.eigenvalues.size

    @property
    def hamiltonian(self) -> np.ndarray:
        return (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.conj().T


@dataclass(frozen=True, eq=False)
class ProbabilityTrace:
    """
    Occupation probability of every vertex over a time grid

    Attributes
    ----------
    times : np.ndarray
        Strictly increasing times, shape `(T,)`
    probs : np.ndarray
        `probs[k, j - 1]` is the probability of vertex `j` at `times[k]`, shape `(T, n)`
    density_matrices : np.ndarray | None
        Full density matrices `(T, n, n)` when an open-system evolution kept them
    min_eigenvalue : float | None
        Most negative density-matrix eigenvalue seen by an open-system evolution
    """

    times: np.ndarray
    probs: np.ndarray
    density_matrices: np.ndarray | None = field(default=None, repr=False)
    min_eigenvalue: float | None = None

    def __post_init__(self):
        times = validate_times(self.times)
        probs = np.array(self.probs, dtype=float)
        if probs.ndim != 2 or probs.shape[0] != times.size:
            raise DimensionMismatch(
                f"probabilities of shape {probs.shape} do not match {times.size} times",
                "probs",
            )
        if np.any(np.abs(probs.sum(axis=1) - 1) > c.OPEN_TRACE_TOL):
            raise InvalidState("probabilities do not sum to 1 at every time", "probs")
        object.__setattr__(self, "times", _readonly(times))
        object.__setattr__(self, "probs", _readonly(probs))

    @property
    def n_vertices(self) -> int:
        return self.probs.shape[1]

    def vertex(self, j: int) -> np.ndarray:
        """
        Probability of vertex `j` (1-based) at every time
        """
        return self.probs[:, j - 1]


def validate_times(times, allow_negative: bool = True) -> np.ndarray:
    """
    Times as a float array, checked to be non-empty, finite and strictly increasing

    Raises
    ------
    InvalidTimeGrid
    """
    times = np.atleast_1d(np.array(times, dtype=float))
    if times.ndim != 1 or times.size < 1:
        raise InvalidTimeGrid("expected a non-empty 1-d array of times", "times")
    if not np.all(np.isfinite(times)):
        raise InvalidTimeGrid("times must be finite", "times")
    if np.any(np.diff(times) <= 0):
        raise InvalidTimeGrid("times must be strictly increasing", "times")
    if not allow_negative and times[0] < 0:
        raise InvalidTimeGrid("times must be non-negative", "times")
    return times


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """
    Mixed state of the walker, Hermitian with unit trace and positive semidefinite
    """

    rho: np.ndarray

    def __post_init__(self):
        rho = np.array(self.rho, dtype=np.complex128)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] < 1:
            raise InvalidState(f"expected a square matrix, got shape {rho.shape}", "rho")
        if np.max(np.abs(rho - rho.conj().T)) > c.HERMITIAN_TOL:
            raise InvalidState("density matrix is not Hermitian", "rho")
        if abs(np.trace(rho) - 1) > c.CLOSED_TRACE_TOL:
            raise InvalidState(f"trace is {np.trace(rho).real}, expected 1", "rho")
        if np.linalg.eigvalsh(rho).min() < -c.PSD_TOL:
            raise InvalidState("density matrix is not positive semidefinite", "rho")
        object.__setattr__(self, "rho", _readonly(rho))

    @property
    def n_vertices(self) -> int:
        return self.rho.shape[0]

    @property
    def populations(self) -> np.ndarray:
        return np.diag(self.rho).real


@dataclass(frozen=True, eq=False)
class JumpOperator:
    matrix: np.ndarray
    kind: LindbladKind

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=np.complex128)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DimensionMismatch(
                f"jump operator must be square, got {matrix.shape}", "operators"
            )
        if self.kind not in c.LINDBLAD_KINDS:
            raise InvalidParams(f"unknown decoherence kind '{self.kind}'", "kinds")
        object.__setattr__(self, "matrix", _readonly(matrix))


@dataclass(frozen=True, eq=False)
class LindbladSet:
    """
    Jump operators together with the coherent/incoherent interpolation weight `omega`
    """

    operators: tuple[JumpOperator, ...]
    omega: float

    def __post_init__(self):
        object.__setattr__(self, "operators", tuple(self.operators))
        if not (np.isfinite(self.omega) and 0 <= self.omega <= 1):
            raise InvalidOmega(f"omega must lie in [0, 1], got {self.omega}", "omega")
        if len({op.matrix.shape for op in self.operators}) > 1:
            raise DimensionMismatch("jump operators differ in dimension", "operators")

    @property
    def matrices(self) -> list[np.ndarray]:
        return [op.matrix for op in self.operators]

    @property
    def kind_tags(self) -> tuple[str, ...]:
        return tuple(op.kind for op in self.operators)

    @property
    def n_vertices(self) -> int | None:
        return self.operators[0].matrix.shape[0] if self.operators else None

    def __len__(self) -> int:
        return len(self.operators)


def time_grid(start: float, stop: float, step: float) -> np.ndarray:
    """
    Evenly spaced times from `start` to `stop` inclusive

    `stop` is reached exactly when `step` divides the interval, otherwise the grid
    ends at the last point before `stop`.

    Raises
    ------
    InvalidTimeGrid
        Unless `start < stop` and `step > 0`
    """
    if not all(map(np.isfinite, (start, stop, step))) or step <= 0 or start >= stop:
        raise InvalidTimeGrid(
            f"expected start < stop and step > 0, got {start}:{stop}:{step}", "t"
        )
    n_steps = (stop - start) / step
    if np.isclose(n_steps, round(n_steps), rtol=0, atol=1e-9):
        return np.linspace(start, stop, round(n_steps) + 1)
    return start + step * np.arange(int(np.floor(n_steps)) + 1)
