"""
Data behind the published walk figures and the checks each of them must pass

| name  | content                                                                  |
|-------|--------------------------------------------------------------------------|
| fig7  | merged star b=4, n=3 with phases pi/2, pi, 3pi/2, walker never at 9       |
| fig9  | 4-cycle with phase pi on (1, 2), walker never at 4                        |
| fig11 | passive-edge graph with phase pi on (1, 3), state frozen on 1 and 2       |
| fig12 | fig9 walk with decoherence omega = 0.1, transfer to 4 no longer zero      |
| fig14 | probe probability at vertex 2 over time for omega = 0, 0.1, ..., 1        |
"""

import math
from pathlib import Path
from typing import Callable, Iterable

import numpy as np
import polars as pl
import toolz as tz
from loguru import logger
from tqdm import tqdm

from . import constants as c
from .chiral import ChiralPhaseAssignment, apply_phases
from .config import auto_match_config
from .dynamics import (
    basis_state,
    build_propagator,
    make_lindblad_set,
    pure_density_matrix,
    qsw_evolve,
    time_grid,
    trace_probabilities,
    trace_to_dataframe,
    uniform_superposition,
    write_csv,
)
from .errors import ConfigError
from .estimation import build_probe
from .graphs import GraphFamilyParams, even_cycle, merged_star_type1, passive_edge_graph
from .utils import logger_wraps, resolve_output_dir

ZERO_TOL = 1e-18


def fig7(t_step: float = c.DEFAULT_T_STEP) -> pl.DataFrame:
    graph, _ = merged_star_type1(GraphFamilyParams(b=4, n=3))
    phases = ChiralPhaseAssignment(
        {(1, 2): math.pi / 2, (3, 4): math.pi, (5, 6): 3 * math.pi / 2}
    )
    return trace_to_dataframe(
        trace_probabilities(
            build_propagator(apply_phases(graph, phases)),
            uniform_superposition(9, [1, 3, 5, 7]),
            time_grid(0, c.FIG7_T_STOP, t_step),
        )
    )


def _phased_cycle():
    graph, _ = even_cycle(4)
    return apply_phases(graph, ChiralPhaseAssignment({(1, 2): math.pi}))


def fig9(t_step: float = c.DEFAULT_T_STEP) -> pl.DataFrame:
    return trace_to_dataframe(
        trace_probabilities(
            build_propagator(_phased_cycle()),
            basis_state(4, 1),
            time_grid(0, c.FIG_T_STOP, t_step),
        )
    )


def fig11(t_step: float = c.DEFAULT_T_STEP) -> pl.DataFrame:
    graph, _ = passive_edge_graph()
    return trace_to_dataframe(
        trace_probabilities(
            build_propagator(apply_phases(graph, ChiralPhaseAssignment({(1, 3): math.pi}))),
            uniform_superposition(6, [1, 2]),
            time_grid(0, c.FIG_T_STOP, t_step),
        )
    )


def fig12(t_step: float = c.DEFAULT_T_STEP, omega: float = c.FIG12_OMEGA) -> pl.DataFrame:
    graph = _phased_cycle()
    return trace_to_dataframe(
        qsw_evolve(
            graph,
            make_lindblad_set(graph, omega=omega, kinds=c.LINDBLAD_KINDS),
            pure_density_matrix(basis_state(4, 1)),
            time_grid(0, c.FIG_T_STOP, t_step),
        )
    )


def fig14(t_step: float = c.DEFAULT_T_STEP) -> pl.DataFrame:
    graph, psi0 = build_probe()
    times = time_grid(0, c.FIG_T_STOP, t_step)
    rho0 = pure_density_matrix(psi0)
    column = lambda omega: qsw_evolve(
        graph, make_lindblad_set(graph, omega=omega, kinds=c.LINDBLAD_KINDS), rho0, times
    ).vertex(c.PROBE_TARGET)
    return pl.DataFrame(
        {"t": times} | {f"omega_{omega:.1f}": column(omega) for omega in c.FIG14_OMEGAS}
    )


# ------------------ acceptance checks ------------------
def _row_sums(df: pl.DataFrame, tol: float) -> list[str]:
    drift = np.max(np.abs(df.drop("t").to_numpy().sum(axis=1) - 1))
    return [f"row sums drift from 1 by {drift:.3e}"] if drift > tol else []


def _below(df: pl.DataFrame, column: str, bound: float) -> list[str]:
    peak = df[column].max()
    return [f"max {column} = {peak:.3e} is not below {bound:.0e}"] if peak >= bound else []


def _above(df: pl.DataFrame, column: str, bound: float) -> list[str]:
    peak = df[column].max()
    return [f"max {column} = {peak:.3e} does not exceed {bound:.0e}"] if peak <= bound else []


def _frozen_at_half(df: pl.DataFrame) -> list[str]:
    error = max(float(np.max(np.abs(df[col].to_numpy() - 0.5))) for col in ("v1", "v2"))
    return [f"v1, v2 deviate from 1/2 by {error:.3e}"] if error > c.CLOSED_TRACE_TOL else []


def _check_fig14(df: pl.DataFrame) -> list[str]:
    return _below(df, "omega_0.0", c.REFERENCE_ZERO_TOL) + list(
        tz.concat(_above(df, col, 1e-6) for col in df.columns[2:])
    )


FIGURES: dict[str, tuple[Callable[..., pl.DataFrame], Callable[[pl.DataFrame], list[str]]]] = {
    "fig7": (
        fig7,
        lambda df: _below(df, "v9", ZERO_TOL) + _row_sums(df, c.CLOSED_TRACE_TOL),
    ),
    "fig9": (
        fig9,
        lambda df: _below(df, "v4", ZERO_TOL)
        + _above(df, "v2", 0.1)
        + _row_sums(df, c.CLOSED_TRACE_TOL),
    ),
    "fig11": (
        fig11,
        lambda df: list(tz.concat(_below(df, f"v{j}", ZERO_TOL) for j in range(3, 7)))
        + _frozen_at_half(df),
    ),
    "fig12": (
        fig12,
        lambda df: _above(df, "v4", 1e-3) + _row_sums(df, c.OPEN_TRACE_TOL),
    ),
    "fig14": (fig14, _check_fig14),
}


def _check_names(names: Iterable[str]) -> list[str]:
    names = list(names)
    if unknown := [name for name in names if name not in FIGURES]:
        raise ConfigError(f"unknown figures {unknown}, expected {list(FIGURES)}", "figures")
    return names


@logger_wraps(level="INFO")
@auto_match_config(prefixes=["figures"])
def write_figures(
    output_dir: str | Path | None = None,
    default_output_dir: str | Path = "./figures",
    names: Iterable[str] = c.FIGURE_NAMES,
    t_step: float = c.DEFAULT_T_STEP,
    progress: bool = False,
) -> list[Path]:
    """
    Generate the figure data and write one `<name>.csv` per figure

    Parameters
    ----------
    output_dir : str | Path | None
        Target directory, falls back to `CHIRAL_QW_OUTPUT_DIR` and then
        `default_output_dir`
    default_output_dir : str | Path
        Directory used when neither `output_dir` nor the environment names one
    names : Iterable[str]
        Subset of the figures to generate
    t_step : float
        Time step of every figure's grid
    progress : bool
        Show a progress bar

    Returns
    -------
    list[Path]
        Paths of the written files
    """
    output_dir = resolve_output_dir(output_dir, default_output_dir)
    paths = []
    for name in tqdm(_check_names(names), desc="Figures", disable=not progress):
        generate, _ = FIGURES[name]
        path = output_dir / f"{name}.csv"
        write_csv(path, generate(t_step=t_step))
        logger.info(f"Wrote {path}")
        paths.append(path)
    return paths


def check_figure(name: str, df: pl.DataFrame) -> list[str]:
    """
    Failed acceptance checks of a figure's data, empty when it passes
    """
    _, check = FIGURES[_check_names([name])[0]]
    try:
        return check(df)
    except (pl.exceptions.ColumnNotFoundError, KeyError) as e:
        return [f"missing column {e}"]


@logger_wraps(level="INFO")
@auto_match_config(prefixes=["figures"])
def verify_figures(
    input_dir: str | Path | None = None,
    default_output_dir: str | Path = "./figures",
    names: Iterable[str] = c.FIGURE_NAMES,
) -> dict[str, list[str]]:
    """
    Re-read the figure CSVs of a directory and run their acceptance checks

    Returns
    -------
    dict[str, list[str]]
        Failure messages per figure, a missing file counts as a failure
    """
    input_dir = resolve_output_dir(input_dir, default_output_dir)
    failures = {}
    for name in _check_names(names):
        path = input_dir / f"{name}.csv"
        if not path.exists():
            failures[name] = [f"{path} not found"]
            continue
        failures[name] = check_figure(name, pl.read_csv(path, comment_prefix="#"))
    return failures
