"""
Reading and writing phase assignment files (JSON)

Format::

    {"phases": [{"i": 1, "j": 2, "alpha": 3.141592653589793}, ...]}

A bare list of entries is accepted when reading.
"""

import json
from pathlib import Path

import toolz as tz
from toolz import curried

from ..errors import ConfigError
from ..utils import atomic_write, logger_wraps
from .phases import ChiralPhaseAssignment


def phases_to_dict(a: ChiralPhaseAssignment) -> dict:
    return {
        "phases": [
            {"i": i, "j": j, "alpha": alpha} for (i, j), alpha in sorted(a.phases.items())
        ]
    }


def phases_from_dict(dict_: dict | list) -> ChiralPhaseAssignment:
    try:
        entries = tz.pipe(
            dict_["phases"] if isinstance(dict_, dict) else dict_,
            curried.map(lambda e: (int(e["i"]), int(e["j"]), float(e["alpha"]))),
            list,
        )
    except KeyError as e:
        raise ConfigError(f"malformed phase entry: missing {e}", "phases") from e
    except (TypeError, ValueError) as e:
        raise ConfigError(f"malformed phase entry: {e}", "phases") from e
    return ChiralPhaseAssignment.from_pairs(entries)


@logger_wraps(level="INFO")
def save_phases(path: str | Path, a: ChiralPhaseAssignment) -> None:
    with atomic_write(path) as file:
        json.dump(phases_to_dict(a), file, indent=2)


@logger_wraps(level="INFO")
def load_phases(path: str | Path) -> ChiralPhaseAssignment:
    try:
        with open(path, "r") as file:
            return phases_from_dict(json.load(file))
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read phase file {path}: {e}", "phases") from e
