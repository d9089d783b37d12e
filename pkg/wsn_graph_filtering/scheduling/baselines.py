"""Simplified contention and coloring baselines.

LBPIM and RLBA are slotted random-access loops: in every slot each node
that has not yet broadcast successfully transmits with its own probability
(1/Delta_i for LBPIM, one constant for RLBA). A broadcast succeeds when
every broadcast-region neighbor decodes it with SINR >= kappa. The coloring
baseline gives nodes closer than 2 R*_P distinct colors, one color per slot,
after a contention-based set-up phase in which nodes announce their colors.

None of the baselines controls PDRs: the connection matrix holds, per link,
the mean per-attempt PDR over all of the transmitter's attempts.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from wsn_graph_filtering.exceptions import ScheduleError
from wsn_graph_filtering.graph.shift import connection_from_pdr
from wsn_graph_filtering.models import (
    EventRecord,
    NodeSlot,
    ProtocolTrace,
    RadioParams,
    Schedule,
    SchedulerKind,
    Topology,
)
from wsn_graph_filtering.observability.events import EventSink
from wsn_graph_filtering.radio.phy import link_quality, r_star_preventing, ranges
from wsn_graph_filtering.scheduling.links import gain_matrix, noise_only_sinr, slot_sinr

logger = logging.getLogger(__name__)

MAX_SLOTS = 1_000_000


@dataclass
class _Contention:
    """Outcome of a random-access phase."""
    success_slot: dict[int, int] = field(default_factory=dict)
    success_sinr: dict[int, float] = field(default_factory=dict)
    successes: list[list[int]] = field(default_factory=list)
    pdr_sum: dict[tuple[int, int], float] = field(default_factory=dict)
    attempts: dict[int, int] = field(default_factory=dict)


def _contend(
    topology: Topology,
    params: RadioParams,
    probabilities: np.ndarray,
    rng: np.random.Generator,
    trace: ProtocolTrace,
    source: str,
    sink: EventSink | None,
    max_slots: int,
) -> _Contention:
    gain = gain_matrix(topology, params)
    neighbors = topology.adjacency() > 0
    edge_sinr = noise_only_sinr(params, topology.r_broadcast)
    outcome = _Contention()
    pending = np.ones(topology.n, dtype=bool)

    while pending.any():
        ts = len(outcome.successes)
        if ts >= max_slots:
            raise ScheduleError(f"{source} did not finish within {max_slots} slots")
        draws = rng.random(topology.n)
        transmitters = np.flatnonzero(pending & (draws < probabilities))
        succeeded: list[int] = []
        if transmitters.size:
            sinr = slot_sinr(gain, params.noise_mw, transmitters)
            for row, tx in enumerate(transmitters.tolist()):
                trace.control_messages += 1
                outcome.attempts[tx] = outcome.attempts.get(tx, 0) + 1
                receivers = np.flatnonzero(neighbors[tx])
                if receivers.size == 0:
                    succeeded.append(tx)
                    outcome.success_sinr[tx] = edge_sinr
                    continue
                link_sinr = sinr[row, receivers]
                pdr = link_quality(params, link_sinr)[1]
                for rx, value in zip(receivers.tolist(), pdr.tolist()):
                    outcome.pdr_sum[(tx, rx)] = outcome.pdr_sum.get((tx, rx), 0.0) + value
                if np.all(link_sinr >= params.kappa):
                    succeeded.append(tx)
                    outcome.success_sinr[tx] = float(link_sinr.min())

        for tx in succeeded:
            pending[tx] = False
            outcome.success_slot[tx] = ts
        outcome.successes.append(succeeded)
        event = EventRecord(
            ts=ts,
            kind="slot",
            source=source,
            detail={"transmitters": transmitters.tolist(), "succeeded": succeeded},
        )
        trace.events.append(event)
        if sink is not None:
            sink.log(event)
    return outcome


def _link_pdr(outcome: _Contention) -> dict[tuple[int, int], float]:
    return {(tx, rx): total / outcome.attempts[tx] for (tx, rx), total in outcome.pdr_sum.items()}


def _per_node(
    topology: Topology,
    params: RadioParams,
    slot_of: dict[int, int],
    success_sinr: dict[int, float],
    link_pdr: dict[tuple[int, int], float],
) -> dict[int, NodeSlot]:
    edge_pdr = link_quality(params, noise_only_sinr(params, topology.r_broadcast))[1]
    per_node = {}
    for node in range(topology.n):
        pdrs = [link_pdr[(node, rx)] for rx in topology.neighbors(node)]
        per_node[node] = NodeSlot(
            slot=slot_of[node],
            sinr_min=success_sinr[node],
            pdr_min=min(pdrs) if pdrs else edge_pdr,
            isolated=not pdrs,
        )
    return per_node


def _random_access(
    kind: SchedulerKind,
    topology: Topology,
    params: RadioParams,
    probabilities: np.ndarray,
    seed: int,
    sink: EventSink | None,
    max_slots: int,
) -> tuple[Schedule, ProtocolTrace]:
    ranges(params, 0, topology.r_broadcast)
    rng = np.random.default_rng(seed)
    trace = ProtocolTrace()
    outcome = _contend(topology, params, probabilities, rng, trace, kind.value, sink, max_slots)
    link_pdr = _link_pdr(outcome)
    schedule = Schedule(
        kind=kind,
        slots=[tuple(sorted(nodes)) for nodes in outcome.successes],
        per_node=_per_node(topology, params, outcome.success_slot, outcome.success_sinr, link_pdr),
        link_pdr=link_pdr,
        acceptance={link: 1.0 for link in link_pdr},
        q_matrix=connection_from_pdr(topology.n, link_pdr),
    )
    logger.info("%s finished %d nodes in %d slots", kind.value, topology.n, schedule.n_slots)
    return schedule, trace


def lbpim_schedule(
    topology: Topology,
    params: RadioParams,
    seed: int,
    sink: EventSink | None = None,
    max_slots: int = MAX_SLOTS,
) -> tuple[Schedule, ProtocolTrace]:
    """Random access where node i transmits with probability 1/Delta_i (1 when isolated)."""
    degrees = topology.adjacency().sum(axis=1)
    probabilities = 1.0 / np.maximum(degrees, 1.0)
    return _random_access(SchedulerKind.LBPIM, topology, params, probabilities, seed, sink, max_slots)


def rlba_schedule(
    topology: Topology,
    params: RadioParams,
    seed: int,
    probability: float | None = None,
    sink: EventSink | None = None,
    max_slots: int = MAX_SLOTS,
) -> tuple[Schedule, ProtocolTrace]:
    """Random access with one constant probability, 1/Delta_max by default."""
    if probability is None:
        probability = 1.0 / max(float(topology.adjacency().sum(axis=1).max(initial=0.0)), 1.0)
    if not 0.0 < probability <= 1.0:
        raise ScheduleError(f"transmission probability must lie in (0, 1], got {probability}")
    probabilities = np.full(topology.n, probability)
    return _random_access(SchedulerKind.RLBA, topology, params, probabilities, seed, sink, max_slots)


def coloring_schedule(
    topology: Topology,
    params: RadioParams,
    seed: int,
    sink: EventSink | None = None,
    max_slots: int = MAX_SLOTS,
) -> tuple[Schedule, ProtocolTrace]:
    """Greedy distance coloring; nodes closer than 2 R*_P never share a color.

    Nodes take the smallest color unused by already-colored conflicting
    nodes, in the order their announcements get through (random order
    within an announcement slot). The set-up slots are recorded in the
    trace; the data schedule has one slot per color.
    """
    rng = np.random.default_rng(seed)
    trace = ProtocolTrace()
    separation = 2.0 * r_star_preventing(params, topology.r_broadcast)
    distances = topology.distances()

    degrees = topology.adjacency().sum(axis=1)
    setup = _contend(
        topology, params, 1.0 / np.maximum(degrees, 1.0), rng, trace, "coloring", sink, max_slots
    )
    trace.setup_slots = len(setup.successes)

    colors: dict[int, int] = {}
    for announced in setup.successes:
        for node in rng.permutation(announced).tolist():
            taken = {
                color for other, color in colors.items() if distances[node, other] < separation
            }
            colors[node] = next(c for c in range(topology.n) if c not in taken)

    n_colors = max(colors.values(), default=-1) + 1
    slots = [tuple(sorted(n for n, c in colors.items() if c == color)) for color in range(n_colors)]

    gain = gain_matrix(topology, params)
    neighbors = topology.adjacency() > 0
    link_pdr: dict[tuple[int, int], float] = {}
    success_sinr: dict[int, float] = {}
    edge_sinr = noise_only_sinr(params, topology.r_broadcast)
    for members in slots:
        sinr = slot_sinr(gain, params.noise_mw, members)
        for row, tx in enumerate(members):
            receivers = np.flatnonzero(neighbors[tx])
            if receivers.size == 0:
                success_sinr[tx] = edge_sinr
                continue
            link_sinr = sinr[row, receivers]
            success_sinr[tx] = float(link_sinr.min())
            pdr = link_quality(params, link_sinr)[1]
            for rx, value in zip(receivers.tolist(), pdr.tolist()):
                link_pdr[(tx, rx)] = value

    schedule = Schedule(
        kind=SchedulerKind.COLORING,
        slots=slots,
        per_node=_per_node(topology, params, colors, success_sinr, link_pdr),
        link_pdr=link_pdr,
        acceptance={link: 1.0 for link in link_pdr},
        q_matrix=connection_from_pdr(topology.n, link_pdr),
    )
    logger.info(
        "coloring used %d colors after %d set-up slots", schedule.n_slots, trace.setup_slots
    )
    return schedule, trace


def baseline_schedule(
    kind: SchedulerKind,
    topology: Topology,
    params: RadioParams,
    seed: int,
    rlba_probability: float | None = None,
    sink: EventSink | None = None,
) -> tuple[Schedule, ProtocolTrace]:
    """Dispatch to the LBPIM, RLBA or coloring baseline."""
    if kind is SchedulerKind.LBPIM:
        return lbpim_schedule(topology, params, seed, sink)
    if kind is SchedulerKind.RLBA:
        return rlba_schedule(topology, params, seed, rlba_probability, sink)
    if kind is SchedulerKind.COLORING:
        return coloring_schedule(topology, params, seed, sink)
    raise ScheduleError(f"{kind.value} is not a baseline scheduler")
