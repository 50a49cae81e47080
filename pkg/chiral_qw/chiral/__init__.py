from .gauge import gauge_amplitudes, path_gauge
from .io import load_phases, phases_from_dict, phases_to_dict, save_phases
from .phases import (
    BranchPhaseSums,
    ChiralPhaseAssignment,
    apply_phases,
    branch_phase_sums,
    empty_assignment,
    normalize_phase,
    parse_phase,
    parse_phase_list,
    plan_zero_transfer,
    random_phases,
    satisfies_zero_transfer,
    unit_phasor,
    zero_transfer_residual,
)

__all__ = [
    "ChiralPhaseAssignment",
    "BranchPhaseSums",
    "empty_assignment",
    "normalize_phase",
    "unit_phasor",
    "apply_phases",
    "branch_phase_sums",
    "zero_transfer_residual",
    "satisfies_zero_transfer",
    "plan_zero_transfer",
    "random_phases",
    "parse_phase",
    "parse_phase_list",
    "gauge_amplitudes",
    "path_gauge",
    "phases_to_dict",
    "phases_from_dict",
    "save_phases",
    "load_phases",
]
