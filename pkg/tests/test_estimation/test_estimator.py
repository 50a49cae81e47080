import numpy as np
import pytest

from ..context import errors, estimation

estimate_omega = estimation.estimate_omega
wilson_interval = estimation.wilson_interval
sample_measurements = estimation.sample_measurements
build_reference = estimation.build_reference
ReferenceTable = estimation.ReferenceTable
OmegaEstimate = estimation.OmegaEstimate


@pytest.fixture(scope="module")
def reference_table():
    return build_reference(t_star=3.0, omega_step=0.05)


@pytest.fixture
def linear_table():
    # p2 = omega / 5 on five grid points
    grid = np.linspace(0, 1, 5)
    return ReferenceTable(grid, 3.0, grid / 5, ("dephasing",), "linear", 5)


class TestWilsonInterval:

    # half the trials at 95% confidence
    def test_half(self):
        low, high = wilson_interval(50, 100, 0.95)
        assert low == pytest.approx(0.4038, abs=1e-4)
        assert high == pytest.approx(0.5962, abs=1e-4)

    # no hits keeps the lower bound at zero
    def test_no_hits(self):
        low, high = wilson_interval(0, 20, 0.95)
        assert low == 0.0
        assert 0 < high < 0.2

    # interval narrows with more trials
    def test_narrows(self):
        narrow = np.diff(wilson_interval(3000, 10000))[0]
        wide = np.diff(wilson_interval(30, 100))[0]
        assert narrow < wide

    # zero trials
    def test_no_trials(self):
        with pytest.raises(errors.DegenerateTrials):
            wilson_interval(0, 0)


class TestSampleMeasurements:

    # seeded samples are reproducible and 0/1 valued
    def test_reproducible(self):
        first = sample_measurements(0.3, 1000, seed=5)
        assert np.array_equal(first, sample_measurements(0.3, 1000, seed=5))
        assert set(np.unique(first)) <= {0, 1}

    # frequency matches the probability
    def test_frequency(self):
        assert sample_measurements(0.3, 100_000, seed=1).mean() == pytest.approx(0.3, abs=0.01)

    # probabilities outside [0, 1]
    @pytest.mark.parametrize("p", [-0.1, 1.1])
    def test_invalid(self, p):
        with pytest.raises(errors.InvalidObservation):
            sample_measurements(p, 10, seed=0)


class TestEstimateOmega:

    # frequency on a grid point inverts to that point
    def test_linear_inversion(self, linear_table):
        estimate = estimate_omega(linear_table, observed_hits=100, trials=1000)
        assert estimate.omega_hat == pytest.approx(0.5)
        assert estimate.p_hat == pytest.approx(0.1)
        low, high = estimate.confidence_interval
        assert low <= estimate.omega_hat <= high
        assert not estimate.out_of_range
        assert estimate.sample_size == 1000

    # frequencies above the curve clamp to 1 with a flag
    def test_clamp_high(self, linear_table):
        estimate = estimate_omega(linear_table, observed_hits=10, trials=10)
        assert estimate.omega_hat == 1.0
        assert estimate.out_of_range

    # no hits estimate omega near zero
    def test_no_hits(self, reference_table):
        estimate = estimate_omega(reference_table, observed_hits=0, trials=1_000_000)
        assert estimate.omega_hat <= 0.05
        assert estimate.confidence_interval[0] == pytest.approx(0.0, abs=1e-12)

    # more hits never give a smaller estimate
    def test_monotone_in_hits(self, reference_table):
        estimates = [
            estimate_omega(reference_table, observed_hits=hits, trials=10_000).omega_hat
            for hits in range(0, 10_001, 250)
        ]
        assert np.all(np.diff(estimates) >= 0)

    # synthetic measurements at omega = 0.3 invert close to 0.3
    def test_round_trip(self, reference_table):
        p2 = estimation.probe_p2(0.3, t_star=3.0)
        samples = sample_measurements(p2, 100_000, seed=1234)
        estimate = estimate_omega(reference_table, int(samples.sum()), samples.size)
        assert 0.27 <= estimate.omega_hat <= 0.33

    # 99% intervals cover the true omega for at least 8 of 9 values
    def test_coverage(self, reference_table):
        covered = 0
        for k, omega in enumerate(np.round(np.arange(0.1, 1.0, 0.1), 10)):
            samples = sample_measurements(
                estimation.probe_p2(omega, t_star=3.0), 100_000, seed=100 + k
            )
            low, high = estimate_omega(
                reference_table, int(samples.sum()), samples.size, confidence=0.99
            ).confidence_interval
            covered += low <= omega <= high
        assert covered >= 8

    # seeded bootstrap intervals are reproducible and recorded
    def test_bootstrap(self, linear_table):
        kwargs = {"observed_hits": 120, "trials": 1000, "interval_method": "bootstrap"}
        first = estimate_omega(linear_table, seed=7, **kwargs)
        assert first == estimate_omega(linear_table, seed=7, **kwargs)
        assert first.seed == 7
        assert first.method == "bootstrap"
        assert first.confidence_interval[0] < first.omega_hat < first.confidence_interval[1]

    # estimator settings come from the configuration
    def test_from_config(self, linear_table):
        config = {"estimator__confidence": 0.5, "estimator__t_star": 3.0, "qsw__omega": 0.1}
        estimate = estimate_omega(linear_table, observed_hits=100, trials=1000, **config)
        assert estimate.confidence == 0.5

    # zero trials
    def test_degenerate_trials(self, linear_table):
        with pytest.raises(errors.DegenerateTrials):
            estimate_omega(linear_table, observed_hits=0, trials=0)

    # hits outside 0..trials
    @pytest.mark.parametrize("hits", [-1, 11])
    def test_invalid_observation(self, linear_table, hits):
        with pytest.raises(errors.InvalidObservation):
            estimate_omega(linear_table, observed_hits=hits, trials=10)

    # tables without a monotone range cannot be inverted
    def test_non_monotone_table(self):
        table = ReferenceTable(np.array([0.0, 1.0]), 3.0, np.array([0.0, 0.0]), (), "", 1)
        with pytest.raises(errors.NonMonotoneTable):
            estimate_omega(table, observed_hits=1, trials=10)

    # unknown interval methods
    def test_unknown_method(self, linear_table):
        with pytest.raises(errors.InvalidParams):
            estimate_omega(linear_table, observed_hits=1, trials=10, interval_method="bayes")


class TestOmegaEstimate:

    # intervals must contain the point estimate
    def test_interval_contains_estimate(self):
        with pytest.raises(errors.InvalidParams):
            OmegaEstimate(omega_hat=0.5, confidence_interval=(0.6, 0.7), sample_size=10)
