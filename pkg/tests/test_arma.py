"""Unit tests for the ARMA1 recursion and Tikhonov denoising."""

import numpy as np
import pytest

from wsn_graph_filtering.exceptions import AsymmetricShiftError, DimensionMismatchError, NumericalError
from wsn_graph_filtering.filters import (
    apply_fir,
    arma1_fir_coefficients,
    run_arma1,
    tikhonov_solve,
    tikhonov_target,
)
from wsn_graph_filtering.models import CoefficientMode


class TestArma1:
    """Tests for run_arma1 and its FIR equivalent."""

    def test_fir_equivalence(self, small_shift, rng):
        """Test T ARMA1 steps from y0 = x equal the order-T FIR taps."""
        x = rng.normal(size=small_shift.n)
        for steps in (0, 1, 4, 7):
            arma = run_arma1(small_shift.matrix, -0.45, 1.3, x, x, steps)
            fir = apply_fir(small_shift.matrix, arma1_fir_coefficients(1.3, -0.45, steps), x)
            assert np.allclose(arma, fir)

    def test_taps(self):
        """Test tap layout [phi, phi psi, ..., psi^T]."""
        c = arma1_fir_coefficients(2.0, 0.5, 3)
        assert c.values.tolist() == [2.0, 1.0, 0.5, 0.125]

    def test_negative_steps(self, small_shift):
        """Test a negative step count is rejected."""
        x = np.ones(small_shift.n)
        with pytest.raises(ValueError):
            run_arma1(small_shift.matrix, 0.1, 1.0, x, x, -1)

    def test_size_mismatch(self):
        """Test mismatched state sizes are rejected."""
        with pytest.raises(DimensionMismatchError):
            run_arma1(np.eye(3), 0.1, 1.0, np.ones(3), np.ones(2), 2)

    def test_converges_to_fixed_point(self, small_shift, rng):
        """Test long runs settle at (I - psi S)^-1 phi x."""
        x = rng.normal(size=small_shift.n)
        y = run_arma1(small_shift.matrix, -0.45, 1.0, x, np.zeros_like(x), 200)
        assert np.allclose(y, tikhonov_solve(small_shift.matrix, 0.45, x))


class TestTikhonov:
    """Tests for the Tikhonov target and closed-form solver."""

    def test_target_taps(self):
        """Test h_l = (-w)^l."""
        target = tikhonov_target(3, 0.5)
        assert target.values.tolist() == [1.0, -0.5, 0.25, -0.125]

    def test_node_variant_target(self):
        """Test the variant target replicates the taps over nodes."""
        target = tikhonov_target(2, 0.45, n=5, mode=CoefficientMode.NODE_VARIANT)
        assert target.values.shape == (3, 5)
        assert np.allclose(target.values[2], 0.45**2)

    def test_variant_needs_node_count(self):
        """Test a node-variant target requires n."""
        with pytest.raises(DimensionMismatchError):
            tikhonov_target(2, 0.45, mode=CoefficientMode.NODE_VARIANT)

    def test_truncation_gap_shrinks(self, small_shift, rng):
        """Test the truncated FIR approaches the closed form as L grows."""
        x = rng.normal(size=small_shift.n)
        exact = tikhonov_solve(small_shift.matrix, 0.45, x)
        gaps = [
            np.linalg.norm(apply_fir(small_shift.matrix, tikhonov_target(order, 0.45), x) - exact)
            / np.linalg.norm(exact)
            for order in (5, 10, 20)
        ]
        assert gaps[0] > gaps[1] > gaps[2]
        assert gaps[2] < 1e-10

    def test_singular_system(self):
        """Test a singular I + w S raises NumericalError."""
        with pytest.raises(NumericalError):
            tikhonov_solve(-np.eye(3), 1.0, np.ones(3))

    def test_shape_mismatch(self):
        """Test shift and signal sizes must agree."""
        with pytest.raises(DimensionMismatchError):
            tikhonov_solve(np.eye(3), 0.5, np.ones(4))

    def test_asymmetric_shift(self):
        """Test a directed shift is rejected by the closed form."""
        s = np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]])
        with pytest.raises(AsymmetricShiftError):
            tikhonov_solve(s, 0.5, np.ones(3))
        with pytest.raises(NumericalError):
            tikhonov_solve(s, 0.5, np.ones(3))
