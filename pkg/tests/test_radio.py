"""Unit tests for the physical-layer model."""

import math
from decimal import Decimal, localcontext

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wsn_graph_filtering.exceptions import InfeasibleBroadcastRangeError, RadioModelError
from wsn_graph_filtering.graph import check_connectivity, generate_topology
from wsn_graph_filtering.models import RadioParams
from wsn_graph_filtering.radio import (
    chi_connectivity_bound,
    dbm_to_mw,
    link_quality,
    max_range,
    mw_to_dbm,
    r_star_preventing,
    ranges,
    received_power,
    sinr_at,
)


class TestUnits:
    """Tests for dBm and milliwatt conversion."""

    @pytest.mark.property
    @given(st.floats(min_value=-150.0, max_value=50.0))
    @settings(max_examples=100, deadline=None)
    def test_round_trip(self, dbm):
        """Test mw_to_dbm inverts dbm_to_mw."""
        assert mw_to_dbm(dbm_to_mw(dbm)) == pytest.approx(dbm, abs=1e-9)

    def test_non_positive_power(self):
        """Test zero power has no dBm value."""
        with pytest.raises(RadioModelError):
            mw_to_dbm(0.0)


class TestRadioParams:
    """Tests for RadioParams validation."""

    @pytest.mark.parametrize("chi", [0.0, 1.0, 1.5])
    def test_chi_outside_unit_interval(self, chi):
        """Test chi must lie strictly between 0 and 1."""
        with pytest.raises(RadioModelError):
            RadioParams(chi=chi)

    def test_linear_units(self, radio):
        """Test 0 dBm is 1 mW and -100 dBm is 1e-10 mW."""
        assert radio.tx_power_mw == pytest.approx(1.0)
        assert radio.noise_mw == pytest.approx(1e-10)


class TestPropagation:
    """Tests for received_power and sinr_at."""

    def test_power_law(self, radio):
        """Test P / d^nu at 10 m."""
        assert received_power(radio, 10.0) == pytest.approx(10.0**-2.5)

    def test_near_field_clamp(self, radio):
        """Test distances below one meter receive the one-meter power."""
        assert received_power(radio, 0.25) == pytest.approx(received_power(radio, 1.0))

    def test_zero_distance(self, radio):
        """Test a zero distance is rejected."""
        with pytest.raises(RadioModelError):
            received_power(radio, 0.0)

    def test_sinr_without_interference(self, radio):
        """Test SINR reduces to SNR when nobody else transmits."""
        sinr = sinr_at(radio, np.array([0.0, 0.0]), np.array([10.0, 0.0]))
        assert sinr == pytest.approx(10.0**-2.5 / 1e-10)

    def test_interference_lowers_sinr(self, radio):
        """Test a concurrent sender lowers the SINR."""
        rx, tx = np.array([0.0, 0.0]), np.array([10.0, 0.0])
        alone = sinr_at(radio, rx, tx)
        jammed = sinr_at(radio, rx, tx, [np.array([0.0, 30.0])])
        assert jammed < alone
        assert jammed == pytest.approx(10.0**-2.5 / (30.0**-2.5 + 1e-10))

    def test_coincident_positions(self, radio):
        """Test a transmitter on top of its receiver is rejected."""
        with pytest.raises(RadioModelError):
            sinr_at(radio, np.array([1.0, 1.0]), np.array([1.0, 1.0]))


class TestLinkQuality:
    """Tests for the BER and PDR curves."""

    def test_zero_sinr(self, radio):
        """Test the BER series at SINR 0 sums to varsigma_1."""
        ber, pdr = link_quality(radio, 0.0)
        assert ber == pytest.approx(1.0 / 30.0)
        assert pdr == pytest.approx((1.0 - 1.0 / 30.0) ** 176)

    def test_monotone_above_threshold(self, radio):
        """Test BER falls and PDR rises with SINR from the threshold up."""
        ber, pdr = link_quality(radio, np.linspace(1.0, 10.0, 50))
        assert np.all(np.diff(ber) <= 0.0)
        assert np.all(np.diff(pdr) >= 0.0)
        assert np.all((pdr >= 0.999) & (pdr <= 1.0))

    def test_negative_sinr(self, radio):
        """Test negative SINR values are rejected."""
        with pytest.raises(RadioModelError):
            link_quality(radio, -1.0)

    def test_threshold_against_extended_precision(self, radio):
        """Test BER and PDR at SINR 1 against a 50-digit evaluation of the series."""
        with localcontext() as ctx:
            ctx.prec = 50
            series = sum(
                (-1) ** k * (Decimal(20) * (Decimal(1) / k - 1)).exp() for k in range(2, 17)
            )
            ber = series / 30
            pdr = (1 - ber) ** 176
        got_ber, got_pdr = link_quality(radio, 1.0)
        assert got_ber == pytest.approx(float(ber), rel=1e-12)
        assert got_pdr == pytest.approx(float(pdr), rel=1e-12)


class TestRanges:
    """Tests for the geometric radii."""

    def test_max_range(self, radio):
        """Test R_m = (P / (kappa N0))^(1/nu) is 10 km by default."""
        assert max_range(radio) == pytest.approx(1e4)

    def test_default_broadcast_range(self, radio):
        """Test R_B falls back to chi * R_m."""
        assert ranges(radio, 1).r_broadcast == pytest.approx(5000.0)

    def test_collision_radius_growth(self, radio):
        """Test R_C grows as n^(1/nu)."""
        one = ranges(radio, 1, r_broadcast=70.0).r_collision
        many = ranges(radio, 100, r_broadcast=70.0).r_collision
        assert many / one == pytest.approx(100.0**0.4)

    def test_preventing_radius(self, radio):
        """Test R_P = R_B + R_C, about twice R_B for short ranges."""
        result = ranges(radio, 1, r_broadcast=70.0)
        assert result.r_preventing == pytest.approx(result.r_broadcast + result.r_collision)
        assert r_star_preventing(radio, 70.0) == pytest.approx(140.0, rel=1e-4)

    def test_no_interferers(self, radio):
        """Test zero interferers give a zero collision radius."""
        assert ranges(radio, 0, r_broadcast=70.0).r_collision == 0.0

    def test_infeasible_broadcast_range(self, radio):
        """Test a broadcast range beyond R_m is rejected."""
        with pytest.raises(InfeasibleBroadcastRangeError):
            ranges(radio, 1, r_broadcast=2e4)

    def test_explicit_range_in_params(self):
        """Test r_broadcast_m overrides chi * R_m."""
        assert ranges(RadioParams(r_broadcast_m=70.0), 1).r_broadcast == 70.0

    @pytest.mark.parametrize("kappa", [1.0, 2.0])
    @pytest.mark.parametrize("n_interferers", [1, 3, 10])
    def test_collision_radius_meets_threshold(self, kappa, n_interferers):
        """Test n_I senders at R_C leave a receiver at R_B exactly at SINR kappa."""
        params = RadioParams(kappa=kappa)
        result = ranges(params, n_interferers, r_broadcast=70.0)
        angles = np.pi / 3 + np.linspace(0.0, 2.0 * np.pi, n_interferers, endpoint=False)
        interferers = result.r_collision * np.column_stack([np.cos(angles), np.sin(angles)])
        sinr = sinr_at(params, np.zeros(2), np.array([70.0, 0.0]), interferers)
        assert sinr == pytest.approx(kappa, rel=1e-9)


class TestConnectivityBound:
    """Tests for chi_connectivity_bound."""

    def test_bound_value(self, radio):
        """Test the lower end of the admissible chi interval."""
        lower, upper = chi_connectivity_bound(radio, 150.0, 100)
        assert lower == pytest.approx(150.0 * math.sqrt(math.log(100) / (math.pi * 100 * 1e8)))
        assert upper == 1.0

    def test_single_node(self, radio):
        """Test the bound needs at least two nodes."""
        with pytest.raises(RadioModelError):
            chi_connectivity_bound(radio, 150.0, 1)

    def test_deployments_above_bound_connect(self, radio):
        """Test chi at three times the lower bound connects nearly every random deployment."""
        lower, _ = chi_connectivity_bound(radio, 150.0, 100)
        r_broadcast = 3.0 * lower * max_range(radio)
        connected = sum(
            check_connectivity(generate_topology(100, 150.0, r_broadcast, seed)) for seed in range(50)
        )
        assert connected >= 48

    def test_deployments_below_bound_split(self, radio):
        """Test chi at half the lower bound almost never connects a deployment."""
        lower, _ = chi_connectivity_bound(radio, 150.0, 100)
        r_broadcast = 0.5 * lower * max_range(radio)
        connected = sum(
            check_connectivity(generate_topology(100, 150.0, r_broadcast, seed)) for seed in range(50)
        )
        assert connected <= 2
