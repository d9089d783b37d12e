"""Unit tests for the CDSA slot allocation protocol."""

import numpy as np
import pytest

from wsn_graph_filtering.exceptions import ScheduleError
from wsn_graph_filtering.graph import generate_topology, topology_from_positions
from wsn_graph_filtering.models import SchedulerKind
from wsn_graph_filtering.observability import MemoryEventSink
from wsn_graph_filtering.radio import r_star_preventing, ranges
from wsn_graph_filtering.scheduling import cdsa_schedule, verify_schedule


@pytest.fixture
def cluster():
    """Ten nodes inside a 20 m square; every pair is closer than 2 R_P."""
    return generate_topology(10, side_len=20.0, r_broadcast=15.0, seed=3)


@pytest.fixture
def sparse():
    """Forty nodes over 3 km, far enough apart for slots with several members."""
    return generate_topology(40, side_len=3000.0, r_broadcast=70.0, seed=8)


class TestCdsaSchedule:
    """Tests for cdsa_schedule."""

    def test_single_node(self, radio):
        """Test one node gets one slot and is flagged isolated."""
        topology = topology_from_positions(np.array([[5.0, 5.0]]), 10.0, 70.0)
        schedule, trace = cdsa_schedule(topology, radio, n_estimate=1, seed=0)
        assert schedule.slots == [(0,)]
        assert schedule.isolated == [0]
        assert len(trace.of_kind("activate")) == 1

    def test_cluster_is_sequential(self, cluster, radio):
        """Test a dense cluster needs one slot per node."""
        schedule, _ = cdsa_schedule(cluster, radio, n_estimate=cluster.n, seed=1)
        assert schedule.n_slots == cluster.n
        assert all(len(members) == 1 for members in schedule.slots)

    @pytest.mark.parametrize("seed", range(5))
    def test_no_sinr_violations(self, sparse, radio, seed):
        """Test every scheduled link meets the SINR threshold."""
        schedule, _ = cdsa_schedule(sparse, radio, n_estimate=sparse.n, seed=seed)
        report = verify_schedule(schedule, sparse, radio)
        assert report.ok, report.violations[:3]

    @pytest.mark.parametrize("seed", range(3))
    def test_truncated_surplus_is_valid(self, sparse, radio, seed):
        """Test the surplus-truncation variant also schedules without violations."""
        schedule, _ = cdsa_schedule(sparse, radio, n_estimate=sparse.n, seed=seed, truncate_surplus=True)
        assert verify_schedule(schedule, sparse, radio).ok

    def test_underestimated_node_count(self, sparse, radio):
        """Test a low N estimate still allocates every node exactly once."""
        schedule, _ = cdsa_schedule(sparse, radio, n_estimate=5, seed=2)
        assert verify_schedule(schedule, sparse, radio).partition_ok

    def test_same_seed_same_schedule(self, sparse, radio):
        """Test the draw of active nodes is reproducible."""
        first, first_trace = cdsa_schedule(sparse, radio, n_estimate=sparse.n, seed=4)
        second, second_trace = cdsa_schedule(sparse, radio, n_estimate=sparse.n, seed=4)
        assert first.slots == second.slots
        assert [e.to_dict() for e in first_trace.events] == [e.to_dict() for e in second_trace.events]

    def test_invalid_estimate(self, cluster, radio):
        """Test a node-count estimate below one is rejected."""
        with pytest.raises(ScheduleError):
            cdsa_schedule(cluster, radio, n_estimate=0, seed=0)

    def test_row_equalized_connection(self, sparse, radio):
        """Test p_ac * PDR equals the transmitter's PDR_min on every link."""
        schedule, _ = cdsa_schedule(sparse, radio, n_estimate=sparse.n, seed=0)
        assert schedule.kind is SchedulerKind.CDSA
        assert schedule.q_matrix.row_equalized
        for (tx, rx), pdr in schedule.link_pdr.items():
            pdr_min = schedule.per_node[tx].pdr_min
            assert schedule.acceptance[(tx, rx)] * pdr == pytest.approx(pdr_min, abs=1e-12)
            assert schedule.q_matrix.entries[tx, rx] == pdr_min

    def test_connection_support_matches_links(self, sparse, radio):
        """Test the connection matrix is supported on exactly the reachability links."""
        schedule, _ = cdsa_schedule(sparse, radio, n_estimate=sparse.n, seed=0)
        assert np.array_equal(schedule.q_matrix.support(), sparse.adjacency() > 0)



class TestCdsaAcceptance:
    """Tests for CDSA over many random deployments and degenerate clusters."""

    def test_random_instances_are_valid(self, radio):
        """Test 100 deployments schedule every node once without SINR violations."""
        for seed in range(100):
            topology = generate_topology(10 + (seed * 7) % 51, side_len=1500.0, r_broadcast=70.0, seed=seed)
            schedule, trace = cdsa_schedule(topology, radio, n_estimate=topology.n, seed=seed)
            report = verify_schedule(schedule, topology, radio)
            assert report.ok, (seed, report.violations[:3])
            assert sorted(node for members in schedule.slots for node in members) == list(range(topology.n))

            distances = topology.distances()
            for event in trace.of_kind("allocate"):
                members = event.detail["nodes"]
                separation = 2.0 * ranges(radio, event.detail["n_interferers"], 70.0).r_preventing
                for k, u in enumerate(members):
                    for v in members[k + 1 :]:
                        assert distances[u, v] >= separation, (seed, u, v)

    @pytest.mark.parametrize("n", [3, 10, 25])
    def test_disc_of_preventing_radius_is_sequential(self, radio, n):
        """Test nodes inside a disc of radius R*_P get one slot each."""
        r_star = r_star_preventing(radio, 70.0)
        rng = np.random.default_rng(n)
        radius = 0.999 * r_star * np.sqrt(rng.random(n))
        angle = 2.0 * np.pi * rng.random(n)
        positions = r_star + np.column_stack([radius * np.cos(angle), radius * np.sin(angle)])
        topology = topology_from_positions(positions, side_len=2.0 * r_star, r_broadcast=70.0)
        schedule, _ = cdsa_schedule(topology, radio, n_estimate=n, seed=n)
        assert schedule.n_slots == n

    def test_slots_shrink_with_deployment_side(self, radio):
        """Test the median slot count falls from N to one as the deployment spreads out."""
        medians = []
        for side in (20.0, 1000.0, 1e6):
            counts = [
                cdsa_schedule(generate_topology(10, side, 70.0, seed), radio, n_estimate=10, seed=seed)[0].n_slots
                for seed in range(30)
            ]
            medians.append(float(np.median(counts)))
        assert medians[0] == 10.0
        assert medians[-1] == 1.0
        assert all(later <= earlier for earlier, later in zip(medians, medians[1:]))

class TestCdsaTrace:
    """Tests for the protocol event trace."""

    def test_budget_never_negative(self, sparse, radio):
        """Test every announced interferer budget is non-negative."""
        _, trace = cdsa_schedule(sparse, radio, n_estimate=sparse.n, seed=5)
        assert all(e.detail["n_interferers"] >= 0 for e in trace.events if "n_interferers" in e.detail)

    def test_feasible_announced_once_per_slot(self, sparse, radio):
        """Test a node declares feasibility at most once per active node."""
        _, trace = cdsa_schedule(sparse, radio, n_estimate=sparse.n, seed=6)
        announcements = [(e.ts, e.detail["node"]) for e in trace.of_kind("feasible")]
        assert len(announcements) == len(set(announcements))

    def test_one_activation_and_allocation_per_slot(self, sparse, radio):
        """Test each slot has exactly one activate and one allocate event."""
        schedule, trace = cdsa_schedule(sparse, radio, n_estimate=sparse.n, seed=7)
        assert [e.ts for e in trace.of_kind("activate")] == list(range(schedule.n_slots))
        allocated = [tuple(e.detail["nodes"]) for e in trace.of_kind("allocate")]
        assert allocated == schedule.slots

    def test_events_reach_sink(self, cluster, radio):
        """Test the sink sees the same events as the trace."""
        sink = MemoryEventSink()
        _, trace = cdsa_schedule(cluster, radio, n_estimate=cluster.n, seed=0, sink=sink)
        assert sink.events == trace.events
        assert trace.control_messages >= cluster.n
