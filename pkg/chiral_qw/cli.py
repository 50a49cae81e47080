"""
Command-line front end

usage - closed walk on the merged star with planned phases:
    chiral-qw walk --graph type1:4,3 --phases plan --init uniform:1,3,5,7 --t 0:5:0.01
usage - check the zero-transfer condition on the 4-cycle:
    chiral-qw zero-check --graph cycle:4 --phases "1,2:pi"
usage - estimate omega from 12 hits in 1000 trials:
    chiral-qw estimate --hits 12 --trials 1000
usage - write and re-check all figure data:
    chiral-qw figures --output-dir ./figures && chiral-qw verify --input-dir ./figures

Exit codes: 0 success, 1 zero-check or verify failure, 2 configuration error,
3 domain error, 4 numerical failure.
"""

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal, Sequence, override

import toolz as tz
from loguru import logger

from . import constants as c
from .chiral import (
    ChiralPhaseAssignment,
    apply_phases,
    branch_phase_sums,
    empty_assignment,
    load_phases,
    parse_phase_list,
    phases_to_dict,
    plan_zero_transfer,
    save_phases,
    zero_transfer_residual,
)
from .config import configuration
from .dynamics import (
    StateVector,
    basis_state,
    branch_initial_state,
    build_propagator,
    load_state,
    make_lindblad_set,
    pure_density_matrix,
    qsw_evolve,
    time_grid,
    trace_probabilities,
    trace_to_dataframe,
    uniform_superposition,
    write_csv,
    write_density_dump,
)
from .errors import ChiralWalkError, ConfigError, InvalidDecomposition
from .estimation import (
    build_reference,
    estimate_omega,
    read_reference_csv,
    write_reference_csv,
)
from .figures import verify_figures, write_figures
from .graphs import (
    BranchDecomposition,
    GraphFamilyParams,
    HermitianGraph,
    complete_graph,
    cycle_graph,
    even_cycle,
    load_graph,
    merged_star_type1,
    merged_star_type2,
    passive_edge_graph,
    path_graph,
    validate_decomposition,
)
from .utils import atomic_write, config_logger

Command = Literal["walk", "qsw", "zero-check", "plan", "estimate", "figures", "verify"]


class HelpfulParser(argparse.ArgumentParser):
    """
    Print help message when an error occurs.
    """

    @override
    def error(self, message):
        sys.stderr.write("error: %s\n" % message)
        self.print_help()
        sys.exit(2)


@dataclass(frozen=True)
class RunConfig:
    """
    Everything a single command needs, flags merged over the configuration file
    """

    command: Command
    graph: str | None = None
    branches: str | None = None
    phases: str | None = None
    init: str = "basis:1"
    t_start: float = 0.0
    t_stop: float = c.FIG_T_STOP
    t_step: float = c.DEFAULT_T_STEP
    omega: float = c.FIG12_OMEGA
    kinds: tuple[str, ...] = c.LINDBLAD_KINDS
    dissipation_direction: str = "lower"
    output: str | None = None
    format: Literal["csv", "json"] = "csv"
    dump: str | None = None
    hits: int | None = None
    trials: int | None = None
    samples: str | None = None
    table: str | None = None
    write_table: str | None = None
    output_dir: str | None = None
    figures: tuple[str, ...] = c.FIGURE_NAMES
    progress: bool = False
    config: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.command in ("walk", "qsw") and not (
            self.t_step > 0 and self.t_start < self.t_stop
        ):
            raise ConfigError(
                f"time grid needs start < stop and step > 0, got "
                f"{self.t_start}:{self.t_stop}:{self.t_step}",
                "t",
            )
        if self.command in ("walk", "qsw", "zero-check", "plan") and not self.graph:
            raise ConfigError("a graph source is required", "graph")
        if self.command == "estimate" and (self.samples is None) == (
            self.hits is None or self.trials is None
        ):
            raise ConfigError("give either --hits and --trials or --samples", "hits")


# ------------------ input specs ------------------
def _ints(text: str, field_: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise ConfigError(f"expected comma-separated integers, got '{text}'", field_) from e


_FAMILIES = {
    "type1": lambda b, n: merged_star_type1(GraphFamilyParams(b=b, n=n)),
    "type2": lambda b, n: merged_star_type2(GraphFamilyParams(b=b, n=n)),
    "path": lambda n: (path_graph(n), None),
    "cycle": lambda n: even_cycle(n) if n % 2 == 0 and n >= 4 else (cycle_graph(n), None),
    "complete": lambda n: (complete_graph(n), None),
    "passive": passive_edge_graph,
}


def parse_graph(
    spec: str, branches: str | None = None
) -> tuple[HermitianGraph, BranchDecomposition | None]:
    """
    Graph from a family spec (`type1:b,n`, `type2:b,n`, `path:n`, `cycle:n`,
    `complete:n`, `passive`) or a JSON graph file

    `branches` like `"1,2,4;1,3,4"` replaces the decomposition, the merge vertex is
    the last vertex of the branches.
    """
    family, _, args = spec.partition(":")
    if family in _FAMILIES:
        try:
            graph, d = _FAMILIES[family](*_ints(args, "graph"))
        except TypeError as e:
            raise ConfigError(f"wrong number of parameters in '{spec}'", "graph") from e
    elif Path(spec).is_file():
        graph, d = load_graph(spec)
    else:
        raise ConfigError(
            f"'{spec}' is neither a graph family ({', '.join(_FAMILIES)}) nor a file", "graph"
        )

    if branches:
        paths = [tuple(_ints(branch, "branches")) for branch in branches.split(";")]
        if not all(paths):
            raise ConfigError(f"empty branch in '{branches}'", "branches")
        d = BranchDecomposition(branches=tuple(paths), merge_vertex=paths[0][-1])
        validate_decomposition(graph, d)
    return graph, d


def _require_decomposition(d: BranchDecomposition | None) -> BranchDecomposition:
    if d is None:
        raise InvalidDecomposition(
            "graph has no branch decomposition, supply one with --branches", "branches"
        )
    return d


def parse_phases(spec: str | None, d: BranchDecomposition | None) -> ChiralPhaseAssignment:
    """
    Phases from `plan`, an inline list such as `"1,2:pi; 3,4:pi/2"` or a JSON file
    """
    if spec is None or spec.strip().lower() in ("", "none"):
        return empty_assignment()
    if spec == "plan":
        return plan_zero_transfer(_require_decomposition(d))
    if ":" in spec:
        return parse_phase_list(spec)
    return load_phases(spec)


def parse_init(spec: str, n_vertices: int, d: BranchDecomposition | None) -> StateVector:
    """
    Initial state from `basis:k` (or `k`), `uniform:i,j,...`, `branches` or a JSON file
    """
    kind, _, args = spec.partition(":")
    match kind:
        case "basis":
            if len(vertex := _ints(args, "init")) != 1:
                raise ConfigError(f"expected basis:k, got '{spec}'", "init")
            return basis_state(n_vertices, vertex[0])
        case "uniform":
            return uniform_superposition(n_vertices, _ints(args, "init"))
        case "branches":
            return branch_initial_state(_require_decomposition(d), n_vertices)
        case _ if spec.isdigit():
            return basis_state(n_vertices, int(spec))
        case _ if Path(spec).is_file():
            return load_state(spec)
    raise ConfigError(f"cannot interpret initial state '{spec}'", "init")


def parse_time_grid(spec: str) -> tuple[float, float, float]:
    try:
        start, stop, step = map(float, spec.split(":"))
    except ValueError as e:
        raise ConfigError(f"expected start:stop:step, got '{spec}'", "t") from e
    return start, stop, step


def read_samples(path: str | Path) -> tuple[int, int]:
    """
    Hits and trials from a file with one 0 or 1 per line
    """
    try:
        with open(path, "r") as file:
            values = [line.strip() for line in file if line.strip()]
    except OSError as e:
        raise ConfigError(f"cannot read samples {path}: {e}", "samples") from e
    if not values or set(values) - {"0", "1"}:
        raise ConfigError(f"{path} must hold one 0 or 1 per line", "samples")
    return values.count("1"), len(values)


# ------------------ commands ------------------
def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    with atomic_write(output) as file:
        file.write(text)


def _emit_frame(df, config: RunConfig) -> None:
    if config.format == "json":
        _emit(json.dumps(df.to_dict(as_series=False)) + "\n", config.output)
    elif config.output is None:
        sys.stdout.write(
            df.write_csv(float_scientific=True, float_precision=c.CSV_FLOAT_PRECISION)
        )
    else:
        write_csv(config.output, df)


def _walk_inputs(config: RunConfig):
    graph, d = parse_graph(config.graph, config.branches)
    phased = apply_phases(graph, parse_phases(config.phases, d))
    psi0 = parse_init(config.init, graph.n_vertices, d)
    return phased, psi0, time_grid(config.t_start, config.t_stop, config.t_step)


def run_walk(config: RunConfig) -> int:
    graph, psi0, times = _walk_inputs(config)
    trace = trace_probabilities(build_propagator(graph), psi0, times)
    _emit_frame(trace_to_dataframe(trace), config)
    return 0


def run_qsw(config: RunConfig) -> int:
    graph, psi0, times = _walk_inputs(config)
    L = make_lindblad_set(
        graph,
        omega=config.omega,
        kinds=config.kinds,
        dissipation_direction=config.dissipation_direction,
    )
    trace = qsw_evolve(
        graph,
        L,
        pure_density_matrix(psi0),
        times,
        keep_density_matrices=config.dump is not None,
        **config.config,
    )
    _emit_frame(trace_to_dataframe(trace), config)
    if config.dump is not None:
        write_density_dump(config.dump, trace)
    return 0


def run_zero_check(config: RunConfig) -> int:
    graph, d = parse_graph(config.graph, config.branches)
    d = _require_decomposition(d)
    phases = parse_phases(config.phases, d)
    apply_phases(graph, phases)
    residual = zero_transfer_residual(branch_phase_sums(d, phases))
    satisfied = residual < c.RESIDUAL_TOL
    print(f"residual {residual:.17g}")
    print("zero transfer" if satisfied else "transfer not suppressed")
    return 0 if satisfied else 1


def run_plan(config: RunConfig) -> int:
    graph, d = parse_graph(config.graph, config.branches)
    phases = plan_zero_transfer(_require_decomposition(d))
    apply_phases(graph, phases)
    if config.output is None:
        print(json.dumps(phases_to_dict(phases), indent=2))
    else:
        save_phases(config.output, phases)
    return 0


def run_estimate(config: RunConfig) -> int:
    if config.table is not None:
        table = read_reference_csv(config.table)
    else:
        table = build_reference(progress=config.progress, **config.config)
    if config.write_table is not None:
        write_reference_csv(config.write_table, table)

    hits, trials = (
        read_samples(config.samples)
        if config.samples is not None
        else (config.hits, config.trials)
    )
    estimate = estimate_omega(table, hits, trials, **config.config)
    low, high = estimate.confidence_interval
    _emit(
        json.dumps(
            {
                "omega_hat": estimate.omega_hat,
                "confidence_interval": [low, high],
                "confidence": estimate.confidence,
                "method": estimate.method,
                "seed": estimate.seed,
                "p_hat": estimate.p_hat,
                "hits": hits,
                "trials": estimate.sample_size,
                "out_of_range": estimate.out_of_range,
                "t_star": table.t_star,
                "kinds": list(table.kinds),
                "dissipation_direction": table.dissipation_direction,
            },
            indent=2,
        )
        + "\n",
        config.output,
    )
    return 0


def run_figures(config: RunConfig) -> int:
    write_figures(
        output_dir=config.output_dir,
        names=config.figures,
        progress=config.progress,
        **config.config,
    )
    return 0


def run_verify(config: RunConfig) -> int:
    failures = verify_figures(config.output_dir, names=config.figures, **config.config)
    for name, messages in failures.items():
        print(f"{name}: {'ok' if not messages else 'FAILED'}")
        for message in messages:
            print(f"  {message}")
    return 0 if not any(failures.values()) else 1


_COMMANDS = {
    "walk": run_walk,
    "qsw": run_qsw,
    "zero-check": run_zero_check,
    "plan": run_plan,
    "estimate": run_estimate,
    "figures": run_figures,
    "verify": run_verify,
}


def run(config: RunConfig) -> int:
    """
    Execute one command, returns the process exit status
    """
    logger.info(f"Running '{config.command}'")
    return _COMMANDS[config.command](config)


# ------------------ argument parsing ------------------
def _add_graph_args(parser: argparse.ArgumentParser, phases: bool = True) -> None:
    parser.add_argument(
        "--graph",
        "-g",
        type=str,
        help="Graph family (type1:b,n, type2:b,n, path:n, cycle:n, complete:n, passive) or a JSON graph file.",
    )
    parser.add_argument(
        "--branches",
        type=str,
        help="Branch decomposition as vertex paths separated by ';', e.g. '1,2,4;1,3,4'.",
    )
    if phases:
        parser.add_argument(
            "--phases",
            "-p",
            type=str,
            help="'plan', an inline list such as '1,2:pi; 3,4:pi/2', or a JSON phase file.",
        )


def _add_walk_args(parser: argparse.ArgumentParser) -> None:
    _add_graph_args(parser)
    parser.add_argument(
        "--init",
        type=str,
        help="Initial state: basis:k, uniform:i,j,..., branches or a JSON amplitude file. Default basis:1.",
    )
    parser.add_argument(
        "--t",
        type=str,
        help="Time grid start:stop:step. If not provided, the walk section of the configuration file is used.",
    )
    parser.add_argument("--output", "-o", type=str, help="Output file, stdout if omitted.")
    parser.add_argument("--format", choices=["csv", "json"], default="csv")


def build_parser() -> HelpfulParser:
    parser = HelpfulParser(
        prog="chiral-qw",
        description="Simulate chiral quantum walks, zero transfer and decoherence estimation.",
    )
    parser.add_argument(
        "--config",
        "-c",
        type=str,
        help="Path to the configuration file. Defaults to configuration.yaml if it exists.",
    )
    parser.add_argument(
        "--log-level",
        type=str,
        help="Override the logger level of the configuration file, e.g. WARNING.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=HelpfulParser)

    _add_walk_args(subparsers.add_parser("walk", help="Closed-system probability trace."))

    qsw = subparsers.add_parser("qsw", help="Open-system (Lindblad) probability trace.")
    _add_walk_args(qsw)
    qsw.add_argument("--omega", type=float, help="Decoherence strength in [0, 1].")
    qsw.add_argument(
        "--kinds",
        type=str,
        help="Comma-separated decoherence kinds (scattering, dephasing, dissipation).",
    )
    qsw.add_argument("--dissipation-direction", choices=["lower", "higher"])
    qsw.add_argument("--dump", type=str, help="Also write rho(t) at every time to this JSON file.")

    zero_check = subparsers.add_parser("zero-check", help="Evaluate the zero-transfer residual.")
    _add_graph_args(zero_check)

    plan = subparsers.add_parser("plan", help="Write phases that suppress transfer.")
    _add_graph_args(plan, phases=False)
    plan.add_argument("--output", "-o", type=str, help="Phase file, stdout if omitted.")

    estimate = subparsers.add_parser("estimate", help="Estimate omega from probe measurements.")
    estimate.add_argument("--hits", type=int, help="Trials that found the walker at vertex 2.")
    estimate.add_argument("--trials", type=int, help="Number of trials.")
    estimate.add_argument("--samples", type=str, help="File with one 0/1 measurement per line.")
    estimate.add_argument("--table", type=str, help="Reference table CSV, built if omitted.")
    estimate.add_argument("--write-table", type=str, help="Save the reference table used.")
    estimate.add_argument("--t-star", type=float, help="Measurement time of the reference table.")
    estimate.add_argument("--confidence", type=float, help="Confidence level of the interval.")
    estimate.add_argument("--method", choices=["wilson", "bootstrap"], help="Interval method.")
    estimate.add_argument("--seed", type=int, help="Seed of the bootstrap draws.")
    estimate.add_argument("--output", "-o", type=str, help="Result JSON file, stdout if omitted.")
    estimate.add_argument("--progress", action="store_true", help="Show a progress bar.")

    figures = subparsers.add_parser("figures", help="Write the figure data CSVs.")
    figures.add_argument("--output-dir", "-o", type=str, help="Directory for the CSVs.")
    figures.add_argument("--only", type=str, help="Comma-separated subset, e.g. fig7,fig9.")
    figures.add_argument("--progress", action="store_true", help="Show a progress bar.")

    verify = subparsers.add_parser("verify", help="Re-check a directory of figure CSVs.")
    verify.add_argument("--input-dir", "-i", dest="output_dir", type=str)
    verify.add_argument("--only", type=str, help="Comma-separated subset, e.g. fig7,fig9.")
    return parser


def load_configuration(path: str | None) -> dict:
    """
    Configuration dictionary, empty when no file is named and the default is absent
    """
    if path is None:
        path = "configuration.yaml"
        if not Path(path).is_file():
            return {}
    return configuration(path)


def _overrides(args: argparse.Namespace) -> dict:
    # flags given on the command line, as configuration keys
    flags = {
        "qsw__omega": getattr(args, "omega", None),
        "qsw__kinds": tuple(args.kinds.split(",")) if getattr(args, "kinds", None) else None,
        "qsw__dissipation_direction": getattr(args, "dissipation_direction", None),
        "estimator__t_star": getattr(args, "t_star", None),
        "estimator__confidence": getattr(args, "confidence", None),
        "estimator__interval_method": getattr(args, "method", None),
        "estimator__seed": getattr(args, "seed", None),
        "logger__level": args.log_level,
    }
    return tz.valfilter(lambda v: v is not None, flags)


def make_run_config(args: argparse.Namespace, config: dict) -> RunConfig:
    """
    Merge parsed flags over configuration file values
    """
    config = tz.merge(config, _overrides(args))
    t_start, t_stop, t_step = (
        parse_time_grid(args.t)
        if getattr(args, "t", None)
        else (
            config.get("walk__t_start", 0.0),
            config.get("walk__t_stop", c.FIG_T_STOP),
            config.get("walk__t_step", c.DEFAULT_T_STEP),
        )
    )
    only = getattr(args, "only", None)
    return RunConfig(
        command=args.command,
        graph=getattr(args, "graph", None),
        branches=getattr(args, "branches", None),
        phases=getattr(args, "phases", None),
        init=getattr(args, "init", None) or "basis:1",
        t_start=float(t_start),
        t_stop=float(t_stop),
        t_step=float(t_step),
        omega=float(config.get("qsw__omega", c.FIG12_OMEGA)),
        kinds=tuple(config.get("qsw__kinds", c.LINDBLAD_KINDS)),
        dissipation_direction=config.get("qsw__dissipation_direction", "lower"),
        output=getattr(args, "output", None),
        format=getattr(args, "format", "csv"),
        dump=getattr(args, "dump", None),
        hits=getattr(args, "hits", None),
        trials=getattr(args, "trials", None),
        samples=getattr(args, "samples", None),
        table=getattr(args, "table", None),
        write_table=getattr(args, "write_table", None),
        output_dir=getattr(args, "output_dir", None),
        figures=tuple(only.split(",")) if only else c.FIGURE_NAMES,
        progress=getattr(args, "progress", False) or config.get("figures__progress", False),
        config=config,
    )


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_configuration(args.config)
        logger.enable("chiral_qw")
        config_logger(**tz.merge(config, _overrides(args)))
        return run(make_run_config(args, config))
    except ChiralWalkError as e:
        logger.debug(f"{type(e).__name__}: {e}")
        sys.stderr.write(f"error: {e}\n")
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
