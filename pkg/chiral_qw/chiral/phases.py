"""
Complex phases on graph edges and the zero-transfer condition

A phase `alpha` stored for the directed edge `(i, j)` multiplies `weights[i][j]` by
`exp(i alpha)` and `weights[j][i]` by `exp(-i alpha)`. Transfer to the merge vertex of
a branch decomposition is suppressed when the branch phase sums satisfy

    sum_p exp(-i sum_l alpha_l^p) = 0
"""

import math
import re
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np
import toolz as tz
from toolz import curried

from .. import constants as c
from ..errors import ConfigError, DuplicatePhase, InvalidParams, PhaseOnNonEdge, SingleBranch
from ..graphs.datatypes import BranchDecomposition, Edge, HermitianGraph
from ..utils import logger_wraps

TWO_PI = 2 * math.pi
_EXACT_PHASORS = {k * math.pi / 2: phasor for k, phasor in enumerate((1, 1j, -1, -1j))}


def normalize_phase(alpha: float) -> float:
    """
    Map a finite phase into [0, 2pi)
    """
    alpha = float(alpha) % TWO_PI
    # float modulo can round up to exactly 2pi for tiny negative inputs
    return 0.0 if alpha == TWO_PI else alpha


def unit_phasor(alpha: float) -> complex:
    """
    `exp(i alpha)`, exact for the multiples of pi/2

    Parameters
    ----------
    alpha : float
        Phase in radians, any finite value

    Returns
    -------
    complex
        1, i, -1 or -i exactly when `alpha` normalizes to a float multiple of pi/2,
        `cmath.exp(i alpha)` otherwise
    """
    alpha = normalize_phase(alpha)
    if alpha in _EXACT_PHASORS:
        return complex(_EXACT_PHASORS[alpha])
    return complex(np.exp(1j * alpha))


@dataclass(frozen=True)
class ChiralPhaseAssignment:
    """
    Phases attached to directed edges, one entry per unordered vertex pair

    Values are normalized into [0, 2pi) on construction and the mapping is made
    read-only.
    """

    phases: Mapping[Edge, float]

    def __post_init__(self):
        normalized = {}
        for (i, j), alpha in dict(self.phases).items():
            if not math.isfinite(alpha):
                raise InvalidParams(f"phase on ({i}, {j}) is not finite", "phases")
            if i == j:
                raise PhaseOnNonEdge(f"({i}, {j}) is a self-loop", "phases")
            if (j, i) in normalized:
                raise DuplicatePhase(
                    f"pair ({i}, {j}) has more than one orientation", "phases"
                )
            normalized[(int(i), int(j))] = normalize_phase(alpha)
        object.__setattr__(self, "phases", MappingProxyType(normalized))

    @classmethod
    def from_pairs(cls, entries: Iterable[tuple[int, int, float]]) -> "ChiralPhaseAssignment":
        """
        Build an assignment from `(i, j, alpha)` entries

        Raises
        ------
        DuplicatePhase
            If an unordered pair appears twice in either orientation
        """
        phases: dict[Edge, float] = {}
        for i, j, alpha in entries:
            if (i, j) in phases or (j, i) in phases:
                raise DuplicatePhase(f"pair ({i}, {j}) given more than once", "phases")
            phases[(i, j)] = alpha
        return cls(phases)

    def oriented(self, i: int, j: int) -> float:
        """
        Signed phase picked up when traversing `i -> j`, zero for unphased pairs
        """
        if (i, j) in self.phases:
            return self.phases[(i, j)]
        if (j, i) in self.phases:
            return -self.phases[(j, i)]
        return 0.0

    def negated(self) -> "ChiralPhaseAssignment":
        """
        Same values on the reversed pairs, each applied phasor is the exact conjugate
        """
        return ChiralPhaseAssignment(
            {(j, i): alpha for (i, j), alpha in self.phases.items()}
        )

    def __len__(self) -> int:
        return len(self.phases)

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.phases.items())))


def empty_assignment() -> ChiralPhaseAssignment:
    return ChiralPhaseAssignment({})


@dataclass(frozen=True)
class BranchPhaseSums:
    """
    Signed phase sum of every branch, traversed from source to merge vertex
    """

    sums: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "sums", tuple(float(s) for s in self.sums))

    def __len__(self) -> int:
        return len(self.sums)


@logger_wraps()
def apply_phases(g: HermitianGraph, a: ChiralPhaseAssignment) -> HermitianGraph:
    """
    Multiply the weights of the phased edges by their unit phasors

    Parameters
    ----------
    g : HermitianGraph
        Host graph, every phased pair must be one of its edges
    a : ChiralPhaseAssignment
        Phases to append

    Returns
    -------
    HermitianGraph
        `out[i][j] = g[i][j] exp(i alpha)` and `out[j][i] = conj(out[i][j])`, all other
        entries copied from `g`

    Raises
    ------
    PhaseOnNonEdge
    """
    weights = np.array(g.weights)
    for (i, j), alpha in a.phases.items():
        if not (1 <= i <= g.n_vertices and 1 <= j <= g.n_vertices) or weights[
            i - 1, j - 1
        ] == 0:
            raise PhaseOnNonEdge(f"({i}, {j}) is not an edge of the graph", "phases")
        weights[i - 1, j - 1] = g.weights[i - 1, j - 1] * unit_phasor(alpha)
        weights[j - 1, i - 1] = weights[i - 1, j - 1].conjugate()
    return HermitianGraph(weights)


def branch_phase_sums(
    d: BranchDecomposition, a: ChiralPhaseAssignment
) -> BranchPhaseSums:
    return BranchPhaseSums(
        tuple(
            sum(a.oriented(u, v) for u, v in d.branch_edges(p))
            for p in range(1, d.n_branches + 1)
        )
    )


def zero_transfer_residual(s: BranchPhaseSums) -> float:
    """
    Modulus of `sum_p exp(-i s_p)`, zero iff transfer to the merge vertex is suppressed
    """
    return abs(sum((unit_phasor(-s_p) for s_p in s.sums), start=0j))


def satisfies_zero_transfer(
    d: BranchDecomposition, a: ChiralPhaseAssignment, tol: float = c.RESIDUAL_TOL
) -> bool:
    return zero_transfer_residual(branch_phase_sums(d, a)) < tol


@logger_wraps(level="INFO")
def plan_zero_transfer(d: BranchDecomposition) -> ChiralPhaseAssignment:
    """
    Phases `2pi (p - 1) / b` on the first edge of every branch `p`

    The branch sums are then the b-th roots of unity, which add up to zero. Entries
    with phase 0 are kept so the plan names every branch it touched.

    Raises
    ------
    SingleBranch
        If the decomposition has a single branch, a lone unit phasor never vanishes
    """
    b = d.n_branches
    if b < 2:
        raise SingleBranch("zero transfer needs at least two branches", "branches")
    return ChiralPhaseAssignment.from_pairs(
        (*d.branch_edges(p)[0], TWO_PI * (p - 1) / b) for p in range(1, b + 1)
    )


def random_phases(edges: Iterable[Edge], rng: np.random.Generator) -> ChiralPhaseAssignment:
    """
    Independent uniform phases in [0, 2pi) on the given directed edges
    """
    edges = list(edges)
    return ChiralPhaseAssignment.from_pairs(
        (i, j, alpha) for (i, j), alpha in zip(edges, rng.uniform(0, TWO_PI, len(edges)))
    )


_PI_PATTERN = re.compile(
    r"^(?P<sign>[+-]?)(?P<num>\d+(?:\.\d*)?)?\s*\*?\s*pi\s*(?:/\s*(?P<den>\d+))?$"
)


def parse_phase(text: str) -> float:
    """
    Phase in radians from a string such as `pi`, `-pi/2`, `3pi/2`, `2*pi/3` or `0.25`

    Multiples of pi are evaluated as `num * pi / den` so `pi/2`, `pi/3`, `pi/4` and
    `pi/6` give the same floats as the corresponding Python expressions.

    Raises
    ------
    ConfigError
    """
    text = text.strip().lower().replace("π", "pi")
    if (match := _PI_PATTERN.match(text)) is not None:
        num = float(match["num"]) if match["num"] else 1.0
        den = int(match["den"]) if match["den"] else 1
        if den == 0:
            raise ConfigError(f"zero denominator in phase '{text}'", "phases")
        return (-1 if match["sign"] == "-" else 1) * num * math.pi / den
    try:
        return float(text)
    except ValueError as e:
        raise ConfigError(f"cannot parse phase '{text}'", "phases") from e


def _parse_phase_entry(entry: str) -> tuple[int, int, float]:
    try:
        pair, phase = entry.split(":")
        i, j = map(int, pair.split(","))
    except ValueError as e:
        raise ConfigError(f"expected 'i,j:phase', got '{entry.strip()}'", "phases") from e
    return i, j, parse_phase(phase)


def parse_phase_list(text: str) -> ChiralPhaseAssignment:
    """
    Parse inline phases like `"1,2:pi; 3,4:pi/2"`

    Entries are separated by `;`, an empty string gives the empty assignment.
    """
    return tz.pipe(
        text.split(";"),
        curried.map(str.strip),
        curried.filter(None),
        curried.map(_parse_phase_entry),
        ChiralPhaseAssignment.from_pairs,
    )
