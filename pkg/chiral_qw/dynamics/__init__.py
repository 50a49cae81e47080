from .datatypes import (
    DensityMatrix,
    JumpOperator,
    LindbladSet,
    ProbabilityTrace,
    SpectralPropagator,
    StateVector,
    time_grid,
    validate_times,
)
from .io import (
    load_state,
    read_trace_csv,
    trace_to_dataframe,
    write_csv,
    write_density_dump,
    write_trace_csv,
)
from .lindblad import (
    build_superoperator,
    classical_rate_matrix,
    lindblad_rhs,
    make_lindblad_set,
    qsw_evolve,
    standard_lindblads,
    stationary_distribution,
    unvec,
    vec,
)
from .states import (
    basis_state,
    branch_initial_state,
    pure_density_matrix,
    state_from_amplitudes,
    uniform_superposition,
)
from .unitary import (
    build_propagator,
    check_trs,
    evolve,
    evolve_amplitudes,
    matrix_exponential,
    site_transfer_probabilities,
    taylor_oracle,
    trace_probabilities,
    unitary,
)

__all__ = [
    "StateVector",
    "SpectralPropagator",
    "ProbabilityTrace",
    "DensityMatrix",
    "JumpOperator",
    "LindbladSet",
    "validate_times",
    "time_grid",
    "basis_state",
    "uniform_superposition",
    "state_from_amplitudes",
    "branch_initial_state",
    "pure_density_matrix",
    "build_propagator",
    "unitary",
    "evolve",
    "evolve_amplitudes",
    "trace_probabilities",
    "check_trs",
    "site_transfer_probabilities",
    "taylor_oracle",
    "matrix_exponential",
    "standard_lindblads",
    "make_lindblad_set",
    "build_superoperator",
    "lindblad_rhs",
    "qsw_evolve",
    "classical_rate_matrix",
    "stationary_distribution",
    "vec",
    "unvec",
    "trace_to_dataframe",
    "write_csv",
    "write_trace_csv",
    "read_trace_csv",
    "write_density_dump",
    "load_state",
]
