"""
Serialization of probability traces (CSV), density-matrix dumps and state files (JSON)
"""

import json
from pathlib import Path

import numpy as np
import polars as pl

from .. import constants as c
from ..errors import ConfigError
from ..utils import atomic_write, logger_wraps
from .datatypes import ProbabilityTrace, StateVector
from .states import state_from_amplitudes


def trace_to_dataframe(trace: ProbabilityTrace) -> pl.DataFrame:
    """
    Columns `t, v1, ..., vn`, one row per time
    """
    return pl.DataFrame(
        {"t": trace.times}
        | {f"v{j}": trace.vertex(j) for j in range(1, trace.n_vertices + 1)}
    )


def dataframe_to_trace(df: pl.DataFrame) -> ProbabilityTrace:
    vertex_columns = [col for col in df.columns if col != "t"]
    if "t" not in df.columns or vertex_columns != [
        f"v{j}" for j in range(1, len(vertex_columns) + 1)
    ]:
        raise ConfigError(f"unexpected trace columns {df.columns}", "trace")
    return ProbabilityTrace(
        df["t"].to_numpy(), df.select(vertex_columns).to_numpy().astype(float)
    )


def write_csv(
    path: str | Path, df: pl.DataFrame, header_lines: tuple[str, ...] = ()
) -> None:
    """
    Write floats with 17 significant digits through a temporary file

    `header_lines` are written first, each prefixed with `#`.
    """
    with atomic_write(path) as file:
        for line in header_lines:
            file.write(f"# {line}\n")
        file.write(
            df.write_csv(float_scientific=True, float_precision=c.CSV_FLOAT_PRECISION)
        )


@logger_wraps(level="INFO")
def write_trace_csv(path: str | Path, trace: ProbabilityTrace) -> None:
    write_csv(path, trace_to_dataframe(trace))


@logger_wraps(level="INFO")
def read_trace_csv(path: str | Path) -> ProbabilityTrace:
    try:
        df = pl.read_csv(path, comment_prefix="#")
    except (OSError, pl.exceptions.PolarsError) as e:
        raise ConfigError(f"cannot read trace {path}: {e}", "trace") from e
    return dataframe_to_trace(df)


@logger_wraps(level="INFO")
def write_density_dump(path: str | Path, trace: ProbabilityTrace) -> None:
    """
    Dump `rho(t)` at every time as rows of `[re, im]` pairs (row-major)

    Raises
    ------
    ConfigError
        If the trace was computed without keeping its density matrices
    """
    if trace.density_matrices is None:
        raise ConfigError("trace holds no density matrices", "dump")
    with atomic_write(path) as file:
        json.dump(
            {
                "times": trace.times.tolist(),
                "rho": [
                    [[[z.real, z.imag] for z in row] for row in rho.tolist()]
                    for rho in trace.density_matrices
                ],
            },
            file,
        )


def load_state(path: str | Path) -> StateVector:
    """
    Read amplitudes from JSON, either `[[re, im], ...]` or `{"amplitudes": [...]}`

    Plain numbers are taken as real amplitudes. The state is normalized.
    """
    try:
        with open(path, "r") as file:
            content = json.load(file)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read state file {path}: {e}", "init") from e

    try:
        entries = content["amplitudes"] if isinstance(content, dict) else content
        amplitudes = np.array(
            [complex(*a) if isinstance(a, list) else complex(a) for a in entries]
        )
    except KeyError as e:
        raise ConfigError(f"state file {path} has no {e} entry", "init") from e
    except (TypeError, ValueError) as e:
        raise ConfigError(f"malformed amplitudes in {path}", "init") from e
    return state_from_amplitudes(amplitudes, normalize=True)
