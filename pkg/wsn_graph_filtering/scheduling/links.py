"""Per-slot SINR evaluation and link-quality tables shared by all schedulers."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from wsn_graph_filtering.exceptions import ScheduleError
from wsn_graph_filtering.graph.shift import connection_from_pdr
from wsn_graph_filtering.models import NodeSlot, RadioParams, Schedule, SchedulerKind, Topology
from wsn_graph_filtering.radio.phy import REFERENCE_DISTANCE, link_quality, received_power


def gain_matrix(topology: Topology, params: RadioParams) -> np.ndarray:
    """Received power from node u at node j, entry (u, j); zero on the diagonal."""
    distances = topology.distances()
    gain = params.tx_power_mw / np.maximum(distances, REFERENCE_DISTANCE) ** params.nu
    np.fill_diagonal(gain, 0.0)
    return gain


def slot_sinr(gain: np.ndarray, noise_mw: float, transmitters: Sequence[int]) -> np.ndarray:
    """SINR of every transmitter of a slot at every node.

    Returns a (len(transmitters), N) array. Nodes that transmit in the slot
    cannot receive (half duplex) and get SINR 0.
    """
    tx = np.asarray(transmitters, dtype=int)
    rows = gain[tx]
    interference = np.maximum(rows.sum(axis=0)[None, :] - rows, 0.0)
    sinr = rows / (interference + noise_mw)
    sinr[:, tx] = 0.0
    return sinr


def noise_only_sinr(params: RadioParams, r_broadcast: float) -> float:
    """SINR at the broadcast range edge without interference."""
    return received_power(params, r_broadcast) / params.noise_mw


def equalized_schedule(
    kind: SchedulerKind,
    topology: Topology,
    params: RadioParams,
    slots: list[tuple[int, ...]],
) -> Schedule:
    """Derive SINR_min, PDR_min and acceptance probabilities for a fixed slot plan.

    Every transmitter accepts a packet from its link (i, j) with probability
    PDR_min_i / PDR_ij, so all of i's links deliver with the same
    probability PDR_min_i and the connection matrix is row-equalized.

    Raises:
        ScheduleError: If some scheduled link's PDR underflows to zero
    """
    gain = gain_matrix(topology, params)
    neighbors = topology.adjacency() > 0
    edge_sinr = noise_only_sinr(params, topology.r_broadcast)
    edge_pdr = link_quality(params, edge_sinr)[1]

    per_node: dict[int, NodeSlot] = {}
    link_pdr: dict[tuple[int, int], float] = {}
    acceptance: dict[tuple[int, int], float] = {}
    min_pdr = np.zeros(topology.n)

    for slot, members in enumerate(slots):
        sinr = slot_sinr(gain, params.noise_mw, members)
        for row, tx in enumerate(members):
            receivers = np.flatnonzero(neighbors[tx])
            if receivers.size == 0:
                per_node[tx] = NodeSlot(slot, edge_sinr, edge_pdr, isolated=True)
                min_pdr[tx] = 1.0
                continue
            link_sinr = sinr[row, receivers]
            pdr = link_quality(params, link_sinr)[1]
            pdr_min = float(pdr.min())
            if pdr_min == 0.0:
                raise ScheduleError(
                    f"node {tx} has a link whose PDR underflows to zero in slot {slot}; "
                    f"packet length {params.packet_bits} bits is too long for its SINR"
                )
            per_node[tx] = NodeSlot(slot, float(link_sinr.min()), pdr_min)
            min_pdr[tx] = pdr_min
            for rx, value in zip(receivers.tolist(), pdr.tolist()):
                link_pdr[(tx, rx)] = value
                acceptance[(tx, rx)] = pdr_min / value

    equalized = {(tx, rx): float(min_pdr[tx]) for (tx, rx) in link_pdr}
    return Schedule(
        kind=kind,
        slots=[tuple(members) for members in slots],
        per_node=per_node,
        link_pdr=link_pdr,
        acceptance=acceptance,
        q_matrix=connection_from_pdr(topology.n, equalized, row_equalized=True),
    )
