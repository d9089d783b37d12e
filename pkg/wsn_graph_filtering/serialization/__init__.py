"""File formats for topologies, signals, coefficients, schedules and metrics."""

from wsn_graph_filtering.serialization.codecs import (
    METRIC_COLUMNS,
    load_coefficients,
    load_connection,
    load_signal,
    load_topology,
    read_json,
    save_coefficients,
    save_schedule,
    save_signal,
    save_signals,
    save_topology,
    sha256_file,
    write_json,
    write_metrics_csv,
    write_table,
)

__all__ = [
    "METRIC_COLUMNS",
    "load_coefficients",
    "load_connection",
    "load_signal",
    "load_topology",
    "read_json",
    "save_coefficients",
    "save_schedule",
    "save_signal",
    "save_signals",
    "save_topology",
    "sha256_file",
    "write_json",
    "write_metrics_csv",
    "write_table",
]
