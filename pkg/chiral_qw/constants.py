"""
Collection of global constants
"""

from typing import Final

# ------------------ Tolerances ------------------
# Norm of a pure state must be 1 within this
NORM_TOL: Final[float] = 1e-12
# Row sums of a probability trace (open systems use the looser one)
CLOSED_TRACE_TOL: Final[float] = 1e-10
OPEN_TRACE_TOL: Final[float] = 1e-8
# Density matrices: Hermiticity, and the most negative eigenvalue tolerated
HERMITIAN_TOL: Final[float] = 1e-10
PSD_TOL: Final[float] = 1e-8
# Branch-phase residual below which zero transfer is predicted
RESIDUAL_TOL: Final[float] = 1e-12
# Eigenvector components this close to the largest modulus tie, the lowest index wins
PIVOT_TIE_TOL: Final[float] = 1e-12

# ------------------ Truncated series oracle ------------------
MIN_TAYLOR_TERMS: Final[int] = 50
# |t| * (max absolute row sum of H) must stay below this for the partial sum to converge
TAYLOR_DOMAIN: Final[float] = 30.0

# ------------------ Lindblad engine ------------------
LINDBLAD_KINDS: Final[tuple[str, ...]] = ("scattering", "dephasing", "dissipation")
# Largest n for which the superoperator is built at all (n**2 <= 4096)
MAX_SUPEROPERATOR_VERTICES: Final[int] = 64
# Largest n integrated by exact exponentiation, adaptive Runge-Kutta above
EXACT_MAX_VERTICES: Final[int] = 16
ADAPTIVE_ATOL: Final[float] = 1e-10
ADAPTIVE_RTOL: Final[float] = 1e-8

# ------------------ Estimator ------------------
DEFAULT_T_STAR: Final[float] = 3.0
DEFAULT_OMEGA_STEP: Final[float] = 0.05
DEFAULT_CONFIDENCE: Final[float] = 0.95
# Channels of the reference curve, P2(t*; omega) increases on all of [0, 1] with these at t* = 3
ESTIMATOR_KINDS: Final[tuple[str, ...]] = ("scattering", "dephasing")
# Zero-transfer limit of the reference curve at omega = 0
REFERENCE_ZERO_TOL: Final[float] = 1e-10
# Vertex whose occupation is measured on the probe graph (1-based)
PROBE_TARGET: Final[int] = 2

# ------------------ Default time grids ------------------
DEFAULT_T_STEP: Final[float] = 0.01
FIG7_T_STOP: Final[float] = 5.0
FIG_T_STOP: Final[float] = 10.0
# Reference decoherence level of the open-system figures
FIG12_OMEGA: Final[float] = 0.1
FIG14_OMEGAS: Final[tuple[float, ...]] = (0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0)

# ------------------ Output ------------------
OUTPUT_DIR_ENV: Final[str] = "CHIRAL_QW_OUTPUT_DIR"
FIGURE_NAMES: Final[tuple[str, ...]] = ("fig7", "fig9", "fig11", "fig12", "fig14")
# polars float formatting, 16 fractional digits in scientific notation = 17 significant
CSV_FLOAT_PRECISION: Final[int] = 16
