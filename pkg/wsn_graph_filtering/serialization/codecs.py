"""CSV and JSON codecs for topologies, signals, coefficients, schedules and metrics.

Floats are written with ``repr`` so every value reloads bit for bit. Files
are UTF-8 with newline-terminated rows.
"""

from __future__ import annotations

import csv
import hashlib
import json
import re
from collections.abc import Iterable, Sequence
from pathlib import Path

import numpy as np

from wsn_graph_filtering.exceptions import (
    DimensionMismatchError,
    GraphFilteringError,
    TopologyError,
)
from wsn_graph_filtering.graph.shift import connection_from_pdr
from wsn_graph_filtering.graph.topology import topology_from_positions
from wsn_graph_filtering.models import (
    CoefficientSet,
    ConnectionMatrix,
    MetricsReport,
    ProtocolTrace,
    Schedule,
    Topology,
)

_TOPOLOGY_HEADER = re.compile(r"#\s*side_len=(\S+)\s+r_broadcast=(\S+)")

METRIC_COLUMNS = [
    "nse",
    "mean_error",
    "mean_signed_error",
    "emp_variance",
    "emp_second_moment",
    "variance_bound_value",
    "t_slots",
    "rho_violations",
    "trials",
]


def _fmt(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def _write_rows(path: Path, header: Sequence[str], rows: Iterable[Sequence[object]]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(value) for value in row])


def _read_rows(path: Path) -> list[dict[str, str]]:
    path = Path(path)
    if not path.exists():
        raise GraphFilteringError(f"File not found: {path}")
    with open(path, encoding="utf-8", newline="") as f:
        return list(csv.DictReader(f))


def save_topology(topology: Topology, path: Path) -> None:
    """Write ``# side_len=<v> r_broadcast=<v>`` followed by ``id,x,y`` rows."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(f"# side_len={topology.side_len!r} r_broadcast={topology.r_broadcast!r}\n")
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["id", "x", "y"])
        for node, (x, y) in enumerate(topology.positions.tolist()):
            writer.writerow([node, repr(x), repr(y)])


def load_topology(path: Path) -> Topology:
    """Read a topology file written by save_topology.

    Raises:
        TopologyError: If the file is missing or malformed
    """
    path = Path(path)
    if not path.exists():
        raise TopologyError(f"Topology file not found: {path}")
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines:
        raise TopologyError(f"Topology file is empty: {path}")
    match = _TOPOLOGY_HEADER.match(lines[0])
    if not match:
        raise TopologyError(f"Topology file must start with '# side_len=<v> r_broadcast=<v>': {path}")

    side_len, r_broadcast = float(match.group(1)), float(match.group(2))
    rows = [line for line in lines[1:] if line.strip() and not line.startswith("id,")]
    positions = {}
    try:
        for line in rows:
            node, x, y = line.split(",")
            positions[int(node)] = (float(x), float(y))
    except ValueError as e:
        raise TopologyError(f"Malformed topology row in {path}: {e}") from e
    if sorted(positions) != list(range(len(positions))):
        raise TopologyError(f"Node ids in {path} must be 0..N-1")
    ordered = np.array([positions[node] for node in range(len(positions))], dtype=float)
    return topology_from_positions(ordered, side_len, r_broadcast)


def save_signal(values: np.ndarray, path: Path, columns: dict[str, np.ndarray] | None = None) -> None:
    """Write a graph signal as ``node_id,value`` (plus any extra named columns)."""
    columns = columns or {}
    names = list(columns)
    rows = (
        [node, float(values[node]), *(float(columns[name][node]) for name in names)]
        for node in range(len(values))
    )
    _write_rows(path, ["node_id", "value", *names], rows)


def load_signal(path: Path) -> np.ndarray:
    rows = _read_rows(path)
    return np.array([float(row["value"]) for row in sorted(rows, key=lambda r: int(r["node_id"]))])


def save_signals(signals: dict[str, np.ndarray], path: Path) -> None:
    """Write several node-indexed signals side by side: ``node_id,<name>,...``."""
    names = list(signals)
    n = len(signals[names[0]])
    rows = ([node, *(float(signals[name][node]) for name in names)] for node in range(n))
    _write_rows(path, ["node_id", *names], rows)


def save_coefficients(c: CoefficientSet, path: Path) -> None:
    """Write ``lag,node_id,value``; node_id is -1 for node-invariant sets."""
    if c.is_variant:
        rows = (
            [lag, node, float(c.values[lag, node])]
            for lag in range(c.order + 1)
            for node in range(c.n_nodes)
        )
    else:
        rows = ([lag, -1, float(c.values[lag])] for lag in range(c.order + 1))
    _write_rows(path, ["lag", "node_id", "value"], rows)


def load_coefficients(path: Path) -> CoefficientSet:
    rows = _read_rows(path)
    if not rows:
        raise DimensionMismatchError(f"No coefficients in {path}")
    order = max(int(row["lag"]) for row in rows)
    if all(int(row["node_id"]) == -1 for row in rows):
        values = np.zeros(order + 1)
        for row in rows:
            values[int(row["lag"])] = float(row["value"])
        return CoefficientSet.invariant(values)
    n = max(int(row["node_id"]) for row in rows) + 1
    values = np.zeros((order + 1, n))
    for row in rows:
        values[int(row["lag"]), int(row["node_id"])] = float(row["value"])
    return CoefficientSet.variant(values)


def save_schedule(schedule: Schedule, directory: Path, trace: ProtocolTrace | None = None) -> list[Path]:
    """Write schedule.csv, acceptance.csv, connection.csv and schedule.json.

    Returns:
        Paths of the written files
    """
    directory = Path(directory)
    schedule_path = directory / "schedule.csv"
    acceptance_path = directory / "acceptance.csv"
    connection_path = directory / "connection.csv"
    summary_path = directory / "schedule.json"

    _write_rows(
        schedule_path,
        ["slot", "node_id", "sinr_min", "pdr_min"],
        (
            [info.slot, node, info.sinr_min, info.pdr_min]
            for node, info in sorted(schedule.per_node.items(), key=lambda kv: (kv[1].slot, kv[0]))
        ),
    )
    _write_rows(
        acceptance_path,
        ["tx", "rx", "p_ac"],
        ([tx, rx, value] for (tx, rx), value in sorted(schedule.acceptance.items())),
    )
    entries = schedule.q_matrix.entries
    _write_rows(
        connection_path,
        ["tx", "rx", "p"],
        ([tx, rx, float(entries[tx, rx])] for tx, rx in zip(*map(np.ndarray.tolist, np.nonzero(entries)))),
    )
    write_json(
        {
            "kind": schedule.kind.value,
            "n_slots": schedule.n_slots,
            "setup_slots": trace.setup_slots if trace else 0,
            "control_messages": trace.control_messages if trace else 0,
            "row_equalized": schedule.q_matrix.row_equalized,
            "isolated": schedule.isolated,
        },
        summary_path,
    )
    return [schedule_path, acceptance_path, connection_path, summary_path]


def load_connection(path: Path, n: int, row_equalized: bool = False) -> ConnectionMatrix:
    """Rebuild a connection matrix from ``tx,rx,p`` rows."""
    rows = _read_rows(path)
    link_pdr = {(int(row["tx"]), int(row["rx"])): float(row["p"]) for row in rows}
    return connection_from_pdr(n, link_pdr, row_equalized=row_equalized)


def write_metrics_csv(reports: Sequence[MetricsReport], path: Path) -> None:
    """One row per (report, seed) with the per-seed metrics."""
    rows = (
        [report.label, entry.get("seed"), *(entry.get(column) for column in METRIC_COLUMNS)]
        for report in reports
        for entry in report.per_seed
    )
    _write_rows(path, ["label", "seed", *METRIC_COLUMNS], rows)


def write_json(data: object, path: Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2, sort_keys=True)
        f.write("\n")


def read_json(path: Path) -> dict:
    path = Path(path)
    if not path.exists():
        raise GraphFilteringError(f"File not found: {path}")
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def sha256_file(path: Path) -> str:
    """SHA-256 hex digest of a file's bytes."""
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def write_table(rows: Sequence[dict], columns: Sequence[str], path: Path) -> None:
    """Write dict rows as CSV with the given column order."""
    _write_rows(path, columns, ([row.get(column) for column in columns] for row in rows))
