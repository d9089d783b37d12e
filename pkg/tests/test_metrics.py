"""Unit tests for empirical statistics, random streams and input signals."""

import numpy as np
import pytest

from wsn_graph_filtering.exceptions import InsufficientSamplesError
from wsn_graph_filtering.simulation import (
    SeededStreams,
    aggregate,
    estimate_empirical_moments,
    noisy_observation,
    normalized_squared_error,
    smooth_signal,
    smoothing_operator,
    summarize,
)


class TestEmpiricalMoments:
    """Tests for estimate_empirical_moments."""

    def test_identical_samples(self):
        """Test identical samples have zero variance."""
        mean, trace = estimate_empirical_moments([np.ones(4)] * 5)
        assert np.array_equal(mean, np.ones(4))
        assert trace == 0.0

    def test_symmetric_pair(self):
        """Test x and -x give tr(Cov) / N = 2 ||x||^2 / N."""
        x = np.array([1.0, -2.0, 3.0])
        mean, trace = estimate_empirical_moments([x, -x])
        assert np.allclose(mean, 0.0)
        assert trace == pytest.approx(2.0 * 14.0 / 3.0)

    @pytest.mark.parametrize("samples", [[np.ones(3)], np.ones(3), []])
    def test_too_few_samples(self, samples):
        """Test fewer than two samples are rejected."""
        with pytest.raises(InsufficientSamplesError):
            estimate_empirical_moments(samples)


class TestErrors:
    """Tests for normalized_squared_error and summarize."""

    def test_nse(self):
        """Test ||y - m||^2 / ||y||^2."""
        assert normalized_squared_error([3.0, 4.0], [3.0, 3.0]) == pytest.approx(1.0 / 25.0)

    def test_nse_zero_reference(self):
        """Test a zero reference gives 0 when matched and inf otherwise."""
        assert normalized_squared_error([0.0, 0.0], [0.0, 0.0]) == 0.0
        assert normalized_squared_error([0.0, 0.0], [1.0, 0.0]) == float("inf")

    def test_summarize(self):
        """Test the per-seed metrics of two symmetric trials."""
        reference = np.array([1.0, 2.0])
        outputs = np.array([[2.0, 2.0], [0.0, 2.0]])
        metrics = summarize(outputs, reference)
        assert metrics["nse"] == 0.0
        assert metrics["mean_error"] == pytest.approx(0.5)
        assert metrics["mean_signed_error"] == pytest.approx(0.0)
        assert metrics["emp_variance"] == pytest.approx(1.0)
        assert metrics["emp_second_moment"] == pytest.approx(0.5)


class TestAggregate:
    """Tests for aggregate."""

    def test_mean_and_sum(self):
        """Test metrics are averaged and rho violations summed."""
        rows = [
            {"seed": 1, "nse": 0.1, "mean_error": 1.0, "mean_signed_error": 0.0, "emp_variance": 2.0,
             "emp_second_moment": 3.0, "variance_bound_value": 4.0, "rho_violations": 1},
            {"seed": 2, "nse": 0.3, "mean_error": 3.0, "mean_signed_error": 1.0, "emp_variance": 4.0,
             "emp_second_moment": 5.0, "variance_bound_value": 6.0, "rho_violations": 2},
        ]
        report = aggregate("q=0.5", rows, trials=10, t_slots=12.0)
        assert report.nse == pytest.approx(0.2)
        assert report.mean_error == pytest.approx(2.0)
        assert report.variance_bound_value == pytest.approx(5.0)
        assert report.rho_violations == 3
        assert report.seeds == [1, 2]
        assert report.t_slots == 12.0
        assert report.to_dict()["per_seed"] == rows


class TestSeededStreams:
    """Tests for SeededStreams."""

    def test_same_key_same_stream(self):
        """Test a key always yields the same draws."""
        streams = SeededStreams(42)
        assert np.array_equal(streams.generator("trials", 3).random(5), streams.generator("trials", 3).random(5))

    def test_keys_are_independent(self):
        """Test streams, indices and replicas differ."""
        streams = SeededStreams(42)
        base = streams.generator("trials", 0).random(3)
        assert not np.array_equal(base, streams.generator("trials", 1).random(3))
        assert not np.array_equal(base, streams.generator("noise", 0).random(3))
        assert not np.array_equal(base, streams.replica(1).generator("trials", 0).random(3))

    def test_integer_seed(self):
        """Test integer seeds are stable plain ints."""
        seed = SeededStreams(7).integer_seed("schedule", 2)
        assert isinstance(seed, int)
        assert seed == SeededStreams(7).integer_seed("schedule", 2)

    def test_unknown_stream(self):
        """Test unknown stream names are rejected."""
        with pytest.raises(KeyError):
            SeededStreams(0).generator("weather")

    def test_negative_seed(self):
        """Test negative master seeds are rejected."""
        with pytest.raises(ValueError):
            SeededStreams(-1)


class TestSignals:
    """Tests for the input signal generators."""

    def test_smoothing_operator_spectrum(self, small_topology):
        """Test the normalized Laplacian has largest eigenvalue 1."""
        s_smooth = smoothing_operator(small_topology)
        assert np.max(np.linalg.eigvalsh(s_smooth)) == pytest.approx(1.0)

    def test_smooth_signal_is_smoother(self, small_topology, rng):
        """Test smoothing lowers the Laplacian quadratic form relative to energy."""
        s_smooth = smoothing_operator(small_topology)
        white = np.random.default_rng(5).standard_normal(small_topology.n)
        smooth = smooth_signal(s_smooth, 5.0, np.random.default_rng(5))

        def roughness(v):
            return float(v @ s_smooth @ v) / float(v @ v)

        assert roughness(smooth) < roughness(white)

    def test_noiseless_observation(self, rng):
        """Test zero noise returns the clean signal."""
        v = np.arange(4.0)
        assert np.array_equal(noisy_observation(v, 0.0, rng), v)

    def test_negative_noise(self, rng):
        """Test a negative standard deviation is rejected."""
        with pytest.raises(ValueError):
            noisy_observation(np.zeros(3), -0.1, rng)
