from .estimator import OmegaEstimate, estimate_omega, sample_measurements, wilson_interval
from .io import read_reference_csv, write_reference_csv
from .reference import (
    ReferenceTable,
    build_probe,
    build_reference,
    monotone_prefix,
    omega_grid,
    probe_fingerprint,
    probe_p2,
)

__all__ = [
    "ReferenceTable",
    "OmegaEstimate",
    "build_probe",
    "probe_fingerprint",
    "probe_p2",
    "omega_grid",
    "monotone_prefix",
    "build_reference",
    "wilson_interval",
    "sample_measurements",
    "estimate_omega",
    "write_reference_csv",
    "read_reference_csv",
]
