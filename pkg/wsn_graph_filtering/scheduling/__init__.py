"""Broadcast slot allocation: CDSA, literature baselines and verification."""

from wsn_graph_filtering.scheduling.baselines import (
    baseline_schedule,
    coloring_schedule,
    lbpim_schedule,
    rlba_schedule,
)
from wsn_graph_filtering.scheduling.cdsa import cdsa_schedule
from wsn_graph_filtering.scheduling.links import (
    equalized_schedule,
    gain_matrix,
    noise_only_sinr,
    slot_sinr,
)
from wsn_graph_filtering.scheduling.verify import (
    SinrViolation,
    VerificationReport,
    verify_schedule,
)

__all__ = [
    "SinrViolation",
    "VerificationReport",
    "baseline_schedule",
    "cdsa_schedule",
    "coloring_schedule",
    "equalized_schedule",
    "gain_matrix",
    "lbpim_schedule",
    "noise_only_sinr",
    "rlba_schedule",
    "slot_sinr",
    "verify_schedule",
]
