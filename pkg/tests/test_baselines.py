"""Unit tests for the LBPIM, RLBA and coloring baselines."""

import numpy as np
import pytest

from wsn_graph_filtering.exceptions import ScheduleError
from wsn_graph_filtering.graph import generate_topology, topology_from_positions
from wsn_graph_filtering.models import SchedulerKind
from wsn_graph_filtering.observability import MemoryEventSink
from wsn_graph_filtering.scheduling import (
    baseline_schedule,
    coloring_schedule,
    lbpim_schedule,
    rlba_schedule,
    verify_schedule,
)

BASELINES = [SchedulerKind.LBPIM, SchedulerKind.RLBA, SchedulerKind.COLORING]


@pytest.fixture
def deployment():
    """Thirty nodes on a 200 m square with a 40 m broadcast range."""
    return generate_topology(30, side_len=200.0, r_broadcast=40.0, seed=21)


class TestRandomAccess:
    """Tests for the contention baselines."""

    @pytest.mark.parametrize("kind", [SchedulerKind.LBPIM, SchedulerKind.RLBA])
    def test_single_node(self, radio, kind):
        """Test a lone node succeeds in the first slot."""
        topology = topology_from_positions(np.array([[0.0, 0.0]]), 10.0, 40.0)
        schedule, _ = baseline_schedule(kind, topology, radio, seed=0)
        assert schedule.n_slots == 1

    @pytest.mark.parametrize("seed", range(3))
    def test_lbpim_successes_meet_threshold(self, deployment, radio, seed):
        """Test every recorded success decodes at all neighbors."""
        schedule, _ = lbpim_schedule(deployment, radio, seed=seed)
        assert verify_schedule(schedule, deployment, radio).ok

    def test_rlba_partition(self, deployment, radio):
        """Test RLBA eventually serves every node once."""
        schedule, _ = rlba_schedule(deployment, radio, seed=1)
        assert verify_schedule(schedule, deployment, radio).partition_ok

    @pytest.mark.parametrize("probability", [0.0, 1.5])
    def test_rlba_bad_probability(self, deployment, radio, probability):
        """Test transmission probabilities outside (0, 1] are rejected."""
        with pytest.raises(ScheduleError):
            rlba_schedule(deployment, radio, seed=0, probability=probability)

    def test_slot_limit(self, deployment, radio):
        """Test a run that cannot finish within max_slots raises."""
        with pytest.raises(ScheduleError):
            lbpim_schedule(deployment, radio, seed=0, max_slots=1)

    def test_one_event_per_slot(self, deployment, radio):
        """Test the sink gets one slot event per slot."""
        sink = MemoryEventSink()
        schedule, trace = lbpim_schedule(deployment, radio, seed=2, sink=sink)
        assert [e.ts for e in sink.events] == list(range(len(trace.events)))
        assert all(e.kind == "slot" and e.source == "lbpim" for e in sink.events)
        assert len(trace.events) >= schedule.n_slots

    def test_no_pdr_control(self, deployment, radio):
        """Test baselines accept every packet and leave rows unequalized."""
        schedule, _ = lbpim_schedule(deployment, radio, seed=0)
        assert set(schedule.acceptance.values()) == {1.0}
        assert not schedule.q_matrix.row_equalized
        assert np.array_equal(schedule.q_matrix.support(), deployment.adjacency() > 0)

    def test_same_seed_same_schedule(self, deployment, radio):
        """Test contention draws are reproducible."""
        first, _ = rlba_schedule(deployment, radio, seed=9)
        second, _ = rlba_schedule(deployment, radio, seed=9)
        assert first.slots == second.slots


class TestColoring:
    """Tests for the distance-coloring baseline."""

    def test_cluster_needs_one_color_per_node(self, radio):
        """Test nodes that all conflict get distinct colors."""
        topology = generate_topology(8, side_len=20.0, r_broadcast=15.0, seed=4)
        schedule, trace = coloring_schedule(topology, radio, seed=0)
        assert schedule.n_slots == topology.n
        assert trace.setup_slots >= 1

    def test_colors_respect_separation(self, deployment, radio):
        """Test nodes sharing a color lie at least 2 R*_P apart."""
        from wsn_graph_filtering.radio import r_star_preventing

        schedule, _ = coloring_schedule(deployment, radio, seed=3)
        separation = 2.0 * r_star_preventing(radio, deployment.r_broadcast)
        distances = deployment.distances()
        for members in schedule.slots:
            for a in members:
                for b in members:
                    assert a == b or distances[a, b] >= separation
        assert verify_schedule(schedule, deployment, radio).partition_ok


class TestBaselineDispatch:
    """Tests for baseline_schedule."""

    def test_dispatch(self, deployment, radio):
        """Test each kind routes to its protocol."""
        for kind in BASELINES:
            schedule, _ = baseline_schedule(kind, deployment, radio, seed=0)
            assert schedule.kind is kind

    def test_cdsa_is_not_a_baseline(self, deployment, radio):
        """Test CDSA cannot be dispatched as a baseline."""
        with pytest.raises(ScheduleError):
            baseline_schedule(SchedulerKind.CDSA, deployment, radio, seed=0)
