"""
Reference curves of the decoherence probe

The probe is the 3-vertex path with phase pi on the edge (1, 2), started in
(|1> + |3>) / sqrt(2). Without decoherence the walker never reaches vertex 2, with
decoherence of strength omega it does, and the probability at a fixed time t* is
tabulated against omega to invert measured frequencies later.
"""

from dataclasses import dataclass
from functools import partial
from typing import Iterable

import numpy as np
import toolz as tz
from loguru import logger
from tqdm import tqdm

from .. import constants as c
from ..config import auto_match_config
from ..dynamics.datatypes import StateVector
from ..dynamics.lindblad import make_lindblad_set, qsw_evolve
from ..dynamics.states import pure_density_matrix, uniform_superposition
from ..errors import InvalidParams, NonMonotoneRange
from ..graphs.construction import new_graph
from ..graphs.datatypes import HermitianGraph
from ..utils import logger_wraps, pmap


def build_probe() -> tuple[HermitianGraph, StateVector]:
    """
    Probe graph with weights [[0, -1, 0], [-1, 0, 1], [0, 1, 0]] and its initial state
    """
    return new_graph(3, [(1, 2, -1), (2, 3, 1)]), uniform_superposition(3, [1, 3])


def probe_fingerprint() -> str:
    graph, psi0 = build_probe()
    return f"{graph.fingerprint}:{np.round(psi0.probabilities, 12).tolist()}"


def probe_p2(
    omega: float,
    t_star: float = c.DEFAULT_T_STAR,
    kinds: Iterable[str] = c.ESTIMATOR_KINDS,
    dissipation_direction: str = "lower",
) -> float:
    """
    Probability of finding the probe walker at vertex 2 at time `t_star`
    """
    graph, psi0 = build_probe()
    L = make_lindblad_set(
        graph, omega=omega, kinds=kinds, dissipation_direction=dissipation_direction
    )
    trace = qsw_evolve(graph, L, pure_density_matrix(psi0), [t_star])
    return float(trace.probs[0, c.PROBE_TARGET - 1])


def monotone_prefix(values: np.ndarray) -> int:
    """
    Length of the longest strictly increasing prefix of `values`
    """
    decreases = np.flatnonzero(np.diff(values) <= 0)
    return int(decreases[0]) + 1 if decreases.size else len(values)


@dataclass(frozen=True, eq=False)
class ReferenceTable:
    """
    Probe probability at vertex 2 against omega at a fixed measurement time

    `monotone_stop` is the length of the leading part of the grid on which the curve
    is strictly increasing, the only part used for inversion. `dissipation_direction`
    only matters when `kinds` contains dissipation.
    """

    omega_grid: np.ndarray
    t_star: float
    probs: np.ndarray
    kinds: tuple[str, ...]
    probe: str
    monotone_stop: int
    dissipation_direction: str = "lower"

    def __post_init__(self):
        grid = np.asarray(self.omega_grid, dtype=float)
        probs = np.asarray(self.probs, dtype=float)
        if grid.ndim != 1 or grid.shape != probs.shape or grid.size < 1:
            raise InvalidParams(
                "omega grid and probabilities must be matching 1-d arrays", "omega_grid"
            )
        if np.any(np.diff(grid) <= 0) or grid[0] < 0 or grid[-1] > 1:
            raise InvalidParams(
                "omega grid must be strictly increasing within [0, 1]", "omega_grid"
            )
        if grid[0] == 0 and probs[0] >= c.REFERENCE_ZERO_TOL:
            raise InvalidParams(
                f"reference probability at omega = 0 is {probs[0]:.3e}, expected zero", "probs"
            )
        if not 0 <= self.monotone_stop <= grid.size:
            raise InvalidParams("monotone range exceeds the grid", "monotone_stop")
        if self.dissipation_direction not in ("lower", "higher"):
            raise InvalidParams(
                f"unknown dissipation direction '{self.dissipation_direction}'",
                "dissipation_direction",
            )
        object.__setattr__(self, "omega_grid", grid)
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "kinds", tuple(self.kinds))

    @property
    def monotone_grid(self) -> np.ndarray:
        return self.omega_grid[: self.monotone_stop]

    @property
    def monotone_probs(self) -> np.ndarray:
        return self.probs[: self.monotone_stop]


def omega_grid(omega_step: float = c.DEFAULT_OMEGA_STEP) -> np.ndarray:
    """
    Evenly spaced grid on [0, 1], the step must divide 1
    """
    n_steps = round(1 / omega_step) if omega_step > 0 else 0
    if n_steps < 1 or not np.isclose(n_steps * omega_step, 1):
        raise InvalidParams(f"omega step {omega_step} does not divide [0, 1]", "omega_step")
    return np.linspace(0, 1, n_steps + 1)


@logger_wraps(level="INFO")
@auto_match_config(prefixes=["qsw", "estimator"])
def build_reference(
    grid: np.ndarray | None = None,
    t_star: float = c.DEFAULT_T_STAR,
    kinds: Iterable[str] = c.ESTIMATOR_KINDS,
    dissipation_direction: str = "lower",
    omega_step: float = c.DEFAULT_OMEGA_STEP,
    allow_truncation: bool = False,
    n_workers: int = 1,
    progress: bool = False,
) -> ReferenceTable:
    """
    Tabulate the probe probability at vertex 2 over an omega grid

    Reads the `qsw` and `estimator` sections of a configuration, `estimator` values
    win where both define a parameter (`kinds`).

    Parameters
    ----------
    grid : np.ndarray | None
        Ascending omega values in [0, 1] starting at 0, defaults to steps of `omega_step`
    t_star : float
        Measurement time, positive
    kinds : Iterable[str]
        Decoherence channels of the probe
    dissipation_direction : str
        Decay direction of the dissipation channel, "lower" or "higher"
    allow_truncation : bool
        Accept a curve that stops increasing before the end of the grid and invert
        only on its increasing part. Otherwise such a curve is an error.
    n_workers : int
        Threads evaluating grid points concurrently, 1 evaluates sequentially
    progress : bool
        Show a progress bar

    Raises
    ------
    NonMonotoneRange
        If the curve is not strictly increasing on the whole grid, or with
        `allow_truncation` on fewer than its first two points
    """
    grid = omega_grid(omega_step) if grid is None else np.asarray(grid, dtype=float)
    if grid.size < 2 or grid[0] != 0:
        raise InvalidParams("omega grid needs at least two points and must start at 0", "grid")
    if not (np.isfinite(t_star) and t_star > 0):
        raise InvalidParams(f"t_star must be positive, got {t_star}", "t_star")
    kinds = tuple(kinds)

    evaluate = partial(
        probe_p2, t_star=t_star, kinds=kinds, dissipation_direction=dissipation_direction
    )
    probs = tz.pipe(
        tqdm(grid.tolist(), desc="Reference curve", disable=not progress),
        (lambda it: pmap(evaluate, list(it), n_workers=n_workers))
        if n_workers > 1
        else (lambda it: list(map(evaluate, it))),
        np.array,
    )

    if (stop := monotone_prefix(probs)) < 2:
        raise NonMonotoneRange(
            f"reference curve at t* = {t_star} is not increasing in omega", "t_star"
        )
    if stop < grid.size:
        message = (
            f"reference curve at t* = {t_star} with {', '.join(kinds)} is increasing only"
            f" for omega <= {grid[stop - 1]:.3g}"
        )
        if not allow_truncation:
            raise NonMonotoneRange(f"{message}, choose another t* or set of kinds", "t_star")
        logger.warning(f"{message}, inversion is restricted to that range")
    return ReferenceTable(
        grid, float(t_star), probs, kinds, probe_fingerprint(), stop, dissipation_direction
    )
