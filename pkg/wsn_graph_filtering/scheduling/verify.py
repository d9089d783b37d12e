"""Independent check of a schedule against the SINR reception condition."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from wsn_graph_filtering.models import RadioParams, Schedule, Topology
from wsn_graph_filtering.scheduling.links import gain_matrix, slot_sinr

# relative slack for SINR values that equal kappa up to rounding
SINR_TOLERANCE = 1e-12


@dataclass(frozen=True)
class SinrViolation:
    """A receiver that would not decode its transmitter's broadcast."""
    slot: int
    tx: int
    rx: int
    sinr: float


@dataclass
class VerificationReport:
    """Result of verify_schedule.

    Attributes:
        violations: Every (slot, tx, rx) whose SINR falls below kappa
        missing: Nodes that never transmit
        duplicated: Nodes that transmit in more than one slot
    """
    violations: list[SinrViolation] = field(default_factory=list)
    missing: list[int] = field(default_factory=list)
    duplicated: list[int] = field(default_factory=list)

    @property
    def partition_ok(self) -> bool:
        return not self.missing and not self.duplicated

    @property
    def ok(self) -> bool:
        return self.partition_ok and not self.violations


def verify_schedule(schedule: Schedule, topology: Topology, params: RadioParams) -> VerificationReport:
    """Recompute every scheduled link's SINR with all same-slot transmitters as interferers.

    Violations are reported, never raised.
    """
    report = VerificationReport()
    counts = np.zeros(topology.n, dtype=int)
    for members in schedule.slots:
        for node in members:
            counts[node] += 1
    report.missing = np.flatnonzero(counts == 0).tolist()
    report.duplicated = np.flatnonzero(counts > 1).tolist()

    gain = gain_matrix(topology, params)
    neighbors = topology.adjacency() > 0
    threshold = params.kappa * (1.0 - SINR_TOLERANCE)
    for slot, members in enumerate(schedule.slots):
        if not members:
            continue
        sinr = slot_sinr(gain, params.noise_mw, members)
        for row, tx in enumerate(members):
            for rx in np.flatnonzero(neighbors[tx]).tolist():
                if sinr[row, rx] < threshold:
                    report.violations.append(SinrViolation(slot, tx, rx, float(sinr[row, rx])))
    return report
