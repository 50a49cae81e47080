"""
Utility functions for loading and saving graph description files (JSON)

Format::

    {"n_vertices": 4,
     "edges": [{"i": 1, "j": 2, "re": -1.0, "im": 0.0}, ...],
     "decomposition": {"branches": [[1, 2, 4], [1, 3, 4]], "merge_vertex": 4}}

`decomposition` is optional. Floats are written with `repr` precision so every
double survives a round trip.
"""

import json
from pathlib import Path

from ..errors import ConfigError
from ..utils import atomic_write, logger_wraps
from .construction import new_graph
from .datatypes import BranchDecomposition, HermitianGraph
from .properties import edge_list, validate_decomposition


def graph_to_dict(g: HermitianGraph, d: BranchDecomposition | None = None) -> dict:
    dict_ = {
        "n_vertices": g.n_vertices,
        "edges": [
            {
                "i": i,
                "j": j,
                "re": float(g.weights[i - 1, j - 1].real),
                "im": float(g.weights[i - 1, j - 1].imag),
            }
            for i, j in edge_list(g)
        ],
    }
    if d is not None:
        dict_["decomposition"] = {
            "branches": [list(branch) for branch in d.branches],
            "merge_vertex": d.merge_vertex,
        }
    return dict_


def graph_from_dict(
    dict_: dict,
) -> tuple[HermitianGraph, BranchDecomposition | None]:
    try:
        n_vertices = int(dict_["n_vertices"])
        edges = [
            (int(e["i"]), int(e["j"]), complex(float(e["re"]), float(e.get("im", 0.0))))
            for e in dict_["edges"]
        ]
        decomposition = dict_.get("decomposition")
        if decomposition is not None:
            branches = tuple(tuple(map(int, branch)) for branch in decomposition["branches"])
            merge_vertex = int(decomposition["merge_vertex"])
    except KeyError as e:
        raise ConfigError(f"malformed graph description: missing {e}", "graph") from e
    except (TypeError, ValueError, AttributeError) as e:
        raise ConfigError(f"malformed graph description: {e}", "graph") from e

    graph = new_graph(n_vertices, edges)
    if decomposition is None:
        return graph, None
    d = BranchDecomposition(branches=branches, merge_vertex=merge_vertex)
    validate_decomposition(graph, d)
    return graph, d


@logger_wraps(level="INFO")
def save_graph(
    path: str | Path, g: HermitianGraph, d: BranchDecomposition | None = None
) -> None:
    with atomic_write(path) as file:
        json.dump(graph_to_dict(g, d), file, indent=2)


@logger_wraps(level="INFO")
def load_graph(path: str | Path) -> tuple[HermitianGraph, BranchDecomposition | None]:
    try:
        with open(path, "r") as file:
            return graph_from_dict(json.load(file))
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read graph file {path}: {e}", "graph") from e
