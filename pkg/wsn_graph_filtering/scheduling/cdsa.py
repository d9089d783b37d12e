"""Cross-layer distributed slot allocation (CDSA).

Each slot is negotiated in logical control rounds. A randomly chosen
candidate becomes active and announces the interferer budget
n_I = N_est - n_tx - 1. Every other candidate that lies at least two
preventing radii from the active node, and from every node that already
declared feasibility, declares itself feasible (arrival order is ascending
node id). When exactly n_I nodes are feasible the slot goes to them plus the
active node; otherwise the budget shrinks by one and the round repeats. A
zero budget gives the active node the slot alone.

Control messages are reliable and instantaneous within a round.
"""

from __future__ import annotations

import logging

import numpy as np

from wsn_graph_filtering.exceptions import ScheduleError
from wsn_graph_filtering.models import (
    EventRecord,
    ProtocolTrace,
    RadioParams,
    Schedule,
    SchedulerKind,
    Topology,
)
from wsn_graph_filtering.observability.events import EventSink
from wsn_graph_filtering.radio.phy import ranges
from wsn_graph_filtering.scheduling.links import equalized_schedule

logger = logging.getLogger(__name__)

SOURCE = "cdsa"


class _Recorder:
    """Collects protocol events and forwards them to an optional sink."""

    def __init__(self, trace: ProtocolTrace, sink: EventSink | None):
        self.trace = trace
        self.sink = sink

    def __call__(self, ts: int, kind: str, **detail) -> None:
        event = EventRecord(ts=ts, kind=kind, source=SOURCE, detail=detail)
        self.trace.events.append(event)
        if self.sink is not None:
            self.sink.log(event)


def _feasible_nodes(
    distances: np.ndarray,
    active: int,
    candidates: list[int],
    separation: float,
) -> tuple[list[int], list[tuple[int, int]]]:
    feasible: list[int] = []
    conflicts: list[tuple[int, int]] = []
    for node in candidates:
        if distances[active, node] < separation:
            continue
        if feasible:
            gaps = distances[node, feasible]
            closest = int(np.argmin(gaps))
            if gaps[closest] < separation:
                conflicts.append((node, feasible[closest]))
                continue
        feasible.append(node)
    return feasible, conflicts


def cdsa_schedule(
    topology: Topology,
    params: RadioParams,
    n_estimate: int,
    seed: int,
    truncate_surplus: bool = False,
    sink: EventSink | None = None,
) -> tuple[Schedule, ProtocolTrace]:
    """Allocate one broadcast slot to every node with CDSA.

    Args:
        topology: Deployment; its r_broadcast is the broadcast range R_B
        params: Radio parameters
        n_estimate: Estimated node count N_est
        seed: Seed of the active-node draws
        truncate_surplus: Keep only the first n_I feasible nodes when more
            declare feasibility, instead of shrinking the budget
        sink: Receives every protocol event as it happens

    Returns:
        (Schedule with a row-equalized q_matrix, ProtocolTrace)

    Raises:
        ScheduleError: If n_estimate < 1
        InfeasibleBroadcastRangeError: If R_B is not below R_m
    """
    if n_estimate < 1:
        raise ScheduleError(f"node count estimate must be at least 1, got {n_estimate}")

    r_broadcast = topology.r_broadcast
    separations = 2.0 * np.array(
        [ranges(params, budget, r_broadcast).r_preventing for budget in range(n_estimate)]
    )
    distances = topology.distances()
    rng = np.random.default_rng(seed)
    trace = ProtocolTrace()
    record = _Recorder(trace, sink)

    unallocated = list(range(topology.n))
    slots: list[tuple[int, ...]] = []
    n_tx = 0

    while unallocated:
        ts = len(slots)
        active = unallocated[int(rng.integers(len(unallocated)))]
        candidates = [node for node in unallocated if node != active]
        budget = max(n_estimate - n_tx - 1, 0)
        record(ts, "activate", node=active, n_interferers=budget)
        trace.control_messages += 1
        announced: set[int] = set()

        members: tuple[int, ...] = (active,)
        while budget > 0:
            feasible, conflicts = _feasible_nodes(distances, active, candidates, separations[budget])
            for node in feasible:
                if node not in announced:
                    announced.add(node)
                    trace.control_messages += 1
                    record(ts, "feasible", node=node, n_interferers=budget)
            if truncate_surplus and len(feasible) > budget:
                feasible = feasible[:budget]
            if len(feasible) == budget:
                for node, other in conflicts:
                    record(ts, "conflict", node=node, conflicts_with=other)
                members = tuple(sorted([active, *feasible]))
                break
            budget -= 1
            trace.control_messages += 1
            record(ts, "decrement", n_interferers=budget, feasible=len(feasible))

        slots.append(members)
        trace.control_messages += 1
        record(ts, "allocate", nodes=list(members), n_interferers=budget)
        logger.debug("slot %d allocated to %s (n_I=%d)", ts, members, budget)

        allocated = set(members)
        unallocated = [node for node in unallocated if node not in allocated]
        n_tx += len(members)

    schedule = equalized_schedule(SchedulerKind.CDSA, topology, params, slots)
    if schedule.isolated:
        logger.warning("nodes with empty broadcast regions: %s", schedule.isolated)
    logger.info(
        "CDSA allocated %d nodes in %d slots with %d control messages",
        topology.n, schedule.n_slots, trace.control_messages,
    )
    return schedule, trace
