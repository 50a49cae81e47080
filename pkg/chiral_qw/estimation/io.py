"""
Reference table CSV with a `#`-prefixed metadata header

    # t_star=3.0
    # kinds=scattering,dephasing
    # probe=<fingerprint>
    # monotone_stop=21
    # dissipation_direction=lower
    omega,p2
    ...
"""

from pathlib import Path

import polars as pl

from ..dynamics.io import write_csv
from ..errors import ConfigError
from ..utils import logger_wraps
from .reference import ReferenceTable


@logger_wraps(level="INFO")
def write_reference_csv(path: str | Path, table: ReferenceTable) -> None:
    write_csv(
        path,
        pl.DataFrame({"omega": table.omega_grid, "p2": table.probs}),
        header_lines=(
            f"t_star={table.t_star!r}",
            f"kinds={','.join(table.kinds)}",
            f"probe={table.probe}",
            f"monotone_stop={table.monotone_stop}",
            f"dissipation_direction={table.dissipation_direction}",
        ),
    )


def _read_metadata(path: str | Path) -> dict[str, str]:
    metadata = {}
    with open(path, "r") as file:
        for line in file:
            if not line.startswith("#"):
                break
            key, _, value = line[1:].strip().partition("=")
            metadata[key] = value
    return metadata


@logger_wraps(level="INFO")
def read_reference_csv(path: str | Path) -> ReferenceTable:
    try:
        metadata = _read_metadata(path)
        df = pl.read_csv(path, comment_prefix="#")
        return ReferenceTable(
            omega_grid=df["omega"].to_numpy(),
            t_star=float(metadata["t_star"]),
            probs=df["p2"].to_numpy(),
            kinds=tuple(filter(None, metadata.get("kinds", "").split(","))),
            probe=metadata.get("probe", ""),
            monotone_stop=int(metadata["monotone_stop"]),
            dissipation_direction=metadata.get("dissipation_direction", "lower"),
        )
    except (OSError, KeyError, ValueError, pl.exceptions.PolarsError) as e:
        raise ConfigError(f"cannot read reference table {path}: {e}", "table") from e
