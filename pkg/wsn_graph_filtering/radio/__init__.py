"""Radio model: path loss, SINR, BER/PDR and scheduling radii."""

from wsn_graph_filtering.radio.phy import (
    REFERENCE_DISTANCE,
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

__all__ = [
    "REFERENCE_DISTANCE",
    "chi_connectivity_bound",
    "dbm_to_mw",
    "link_quality",
    "max_range",
    "mw_to_dbm",
    "r_star_preventing",
    "ranges",
    "received_power",
    "sinr_at",
]
