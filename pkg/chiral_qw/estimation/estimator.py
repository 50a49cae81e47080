"""
Estimating the decoherence strength omega from measured hit frequencies
"""

from dataclasses import dataclass
from typing import Literal

import numpy as np
import scipy.stats

from .. import constants as c
from ..config import auto_match_config
from ..errors import DegenerateTrials, InvalidObservation, InvalidParams, NonMonotoneTable
from ..utils import logger_wraps
from .reference import ReferenceTable


@dataclass(frozen=True)
class OmegaEstimate:
    """
    Point estimate of omega with a confidence interval mapped through the reference curve

    Attributes
    ----------
    omega_hat : float
    confidence_interval : tuple[float, float]
    sample_size : int
        Number of trials behind the estimate
    p_hat : float
        Observed hit frequency at vertex 2
    out_of_range : bool
        Whether `p_hat` fell outside the monotone part of the curve and was clamped
    """

    omega_hat: float
    confidence_interval: tuple[float, float]
    sample_size: int
    p_hat: float = float("nan")
    out_of_range: bool = False
    confidence: float = c.DEFAULT_CONFIDENCE
    method: str = "wilson"
    seed: int | None = None

    def __post_init__(self):
        low, high = self.confidence_interval
        if not low <= self.omega_hat <= high:
            raise InvalidParams(
                f"interval ({low}, {high}) does not contain {self.omega_hat}",
                "confidence_interval",
            )


def sample_measurements(p: float, trials: int, seed: int) -> np.ndarray:
    """
    Seeded synthetic measurements, 1 when the walker is found at vertex 2
    """
    if not 0 <= p <= 1:
        raise InvalidObservation(f"probability {p} outside [0, 1]", "p")
    rng = np.random.default_rng(seed)
    return (rng.random(trials) < p).astype(np.int64)


def wilson_interval(
    hits: int, trials: int, confidence: float = c.DEFAULT_CONFIDENCE
) -> tuple[float, float]:
    """
    Wilson score interval of a binomial proportion
    """
    if trials < 1:
        raise DegenerateTrials("at least one trial is required", "trials")
    z = scipy.stats.norm.ppf(0.5 + confidence / 2)
    p_hat = hits / trials
    denominator = 1 + z**2 / trials
    center = (p_hat + z**2 / (2 * trials)) / denominator
    half_width = (
        z * np.sqrt(p_hat * (1 - p_hat) / trials + z**2 / (4 * trials**2)) / denominator
    )
    return max(0.0, center - half_width), min(1.0, center + half_width)


def _inverse_curve(table: ReferenceTable):
    grid, curve = table.monotone_grid, table.monotone_probs
    return lambda p: np.interp(p, curve, grid)


@logger_wraps(level="INFO")
@auto_match_config(prefixes=["estimator"])
def estimate_omega(
    table: ReferenceTable,
    observed_hits: int,
    trials: int,
    confidence: float = c.DEFAULT_CONFIDENCE,
    interval_method: Literal["wilson", "bootstrap"] = "wilson",
    n_bootstrap: int = 2000,
    seed: int = 1234,
) -> OmegaEstimate:
    """
    Invert an observed hit frequency through the reference curve

    Parameters
    ----------
    table : ReferenceTable
        Reference curve with a verified monotone range
    observed_hits : int
        Number of trials that found the walker at vertex 2
    trials : int
        Number of trials, at least 1
    confidence : float
        Confidence level of the interval
    interval_method : "wilson" | "bootstrap"
        Wilson score interval of the frequency, or a seeded parametric bootstrap,
        both mapped through the same piecewise-linear inverse curve
    n_bootstrap : int
        Number of bootstrap replicates
    seed : int
        Seed of the bootstrap draws

    Returns
    -------
    OmegaEstimate
        Frequencies beyond the curve clamp to the nearest end of the monotone range
        and set `out_of_range`

    Raises
    ------
    DegenerateTrials, InvalidObservation, NonMonotoneTable
    """
    if trials < 1:
        raise DegenerateTrials("at least one trial is required", "trials")
    if not 0 <= observed_hits <= trials:
        raise InvalidObservation(
            f"hits must lie in 0..{trials}, got {observed_hits}", "hits"
        )
    if not 0 < confidence < 1:
        raise InvalidParams(f"confidence must lie in (0, 1), got {confidence}", "confidence")
    if table.monotone_stop < 2:
        raise NonMonotoneTable("reference table has no monotone range", "table")

    invert = _inverse_curve(table)
    p_hat = observed_hits / trials
    omega_hat = float(invert(p_hat))
    curve = table.monotone_probs
    out_of_range = bool(p_hat < curve[0] - c.REFERENCE_ZERO_TOL or p_hat > curve[-1])

    match interval_method:
        case "wilson":
            interval = np.array(wilson_interval(observed_hits, trials, confidence))
            low, high = map(float, invert(interval))
        case "bootstrap":
            rng = np.random.default_rng(seed)
            replicates = invert(rng.binomial(trials, p_hat, n_bootstrap) / trials)
            low, high = map(
                float, np.quantile(replicates, [0.5 - confidence / 2, 0.5 + confidence / 2])
            )
        case _:
            raise InvalidParams(f"unknown interval method '{interval_method}'", "interval_method")

    return OmegaEstimate(
        omega_hat=omega_hat,
        confidence_interval=(min(low, omega_hat), max(high, omega_hat)),
        sample_size=trials,
        p_hat=p_hat,
        out_of_range=out_of_range,
        confidence=confidence,
        method=interval_method,
        seed=seed if interval_method == "bootstrap" else None,
    )
