"""Unit tests for per-slot SINR and the equalized link-quality tables."""

import numpy as np
import pytest

from wsn_graph_filtering.exceptions import ScheduleError
from wsn_graph_filtering.models import RadioParams, SchedulerKind
from wsn_graph_filtering.radio import link_quality
from wsn_graph_filtering.scheduling import equalized_schedule, gain_matrix, slot_sinr


class TestSlotSinr:
    """Tests for slot_sinr."""

    def test_transmitters_cannot_receive(self, path_topology, radio):
        """Test half-duplex nodes get SINR 0 from every sender of their slot."""
        sinr = slot_sinr(gain_matrix(path_topology, radio), radio.noise_mw, (0, 1))
        assert sinr.shape == (2, 4)
        assert np.all(sinr[:, [0, 1]] == 0.0)
        assert np.all(sinr[:, [2, 3]] > 0.0)


class TestEqualizedSchedule:
    """Tests for equalized_schedule."""

    def test_sequential_links_are_perfect(self, path_topology, radio):
        """Test one sender per slot at 10 m delivers every packet."""
        schedule = equalized_schedule(SchedulerKind.CDSA, path_topology, radio, [(0,), (1,), (2,), (3,)])
        assert all(pdr == 1.0 for pdr in schedule.link_pdr.values())
        assert all(p == 1.0 for p in schedule.acceptance.values())
        assert schedule.q_matrix.is_deterministic()

    def test_half_duplex_link_keeps_small_pdr(self, path_topology, radio):
        """Test a link into a transmitting neighbor keeps the SINR-0 delivery ratio."""
        schedule = equalized_schedule(SchedulerKind.CDSA, path_topology, radio, [(0, 1), (2,), (3,)])
        assert schedule.per_node[0].pdr_min == pytest.approx(link_quality(radio, 0.0)[1])
        assert schedule.per_node[0].pdr_min > 0.0

    def test_underflowing_pdr(self, path_topology):
        """Test a packet too long to survive SINR 0 is reported instead of dividing by zero."""
        params = RadioParams(packet_bits=30000)
        with pytest.raises(ScheduleError, match="underflows"):
            equalized_schedule(SchedulerKind.CDSA, path_topology, params, [(0, 1), (2,), (3,)])
