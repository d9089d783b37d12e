"""Data models for WSN graph filtering."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np

from wsn_graph_filtering.exceptions import (
    DimensionMismatchError,
    RadioModelError,
    SupportMismatchError,
    TopologyError,
)

# A graph signal is a length-N float vector indexed by node id.
GraphSignal = np.ndarray


def _frozen_array(values: Any, dtype: type = float) -> np.ndarray:
    array = np.array(values, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array


class ShiftKind(Enum):
    """Construction rule of a graph shift operator.

    Attributes:
        ADJACENCY: S = A
        DIRECTED_LAPLACIAN: S = D - A with D the out-degree matrix
        NORMALIZED_SHIFTED: S = L / lambda_max - 0.5 I
    """
    ADJACENCY = "adjacency"
    DIRECTED_LAPLACIAN = "directed_laplacian"
    NORMALIZED_SHIFTED = "normalized_shifted"


class DiagonalModel(Enum):
    """How the expected shift treats Laplacian diagonals.

    Attributes:
        REALIZED_DEGREE: exact expectation of the realized out-degree,
            sum_j p_ij A_ij (default)
        HADAMARD: literal P o S with diagonal probability p_ii = q_i, the
            smallest supported probability of row i
    """
    REALIZED_DEGREE = "realized_degree"
    HADAMARD = "hadamard"


class CoefficientMode(Enum):
    """Node-invariant (one scalar per lag) or node-variant (one vector per lag)."""
    NODE_INVARIANT = "node_invariant"
    NODE_VARIANT = "node_variant"


class SchedulerKind(Enum):
    """Slot allocation protocols available to the simulator."""
    CDSA = "cdsa"
    LBPIM = "lbpim"
    RLBA = "rlba"
    COLORING = "coloring"


@dataclass(frozen=True, eq=False)
class Topology:
    """Node deployment and its geometric reachability graph.

    Attributes:
        positions: (N, 2) array of node coordinates in meters
        side_len: Side of the square deployment area in meters
        r_broadcast: Broadcast range R_B in meters
        edges: Directed pairs (i, j) with d(i, j) <= R_B and i != j
        grid: (rows, cols, spacing) for lattice layouts, None otherwise
    """
    positions: np.ndarray
    side_len: float
    r_broadcast: float
    edges: frozenset[tuple[int, int]]
    grid: tuple[int, int, float] | None = None

    def __post_init__(self) -> None:
        positions = _frozen_array(self.positions)
        if positions.ndim != 2 or positions.shape[1] != 2:
            raise TopologyError(f"positions must have shape (N, 2), got {positions.shape}")
        object.__setattr__(self, "positions", positions)

    @property
    def n(self) -> int:
        """Number of nodes."""
        return int(self.positions.shape[0])

    def adjacency(self) -> np.ndarray:
        """Return the 0/1 adjacency matrix of the edge set."""
        matrix = np.zeros((self.n, self.n))
        for i, j in self.edges:
            matrix[i, j] = 1.0
        return matrix

    def neighbors(self, node: int) -> list[int]:
        """Return the broadcast region of ``node`` in ascending id order."""
        return sorted(j for (i, j) in self.edges if i == node)

    def distances(self) -> np.ndarray:
        """Return the (N, N) Euclidean distance matrix."""
        diff = self.positions[:, None, :] - self.positions[None, :, :]
        return np.hypot(diff[..., 0], diff[..., 1])

    def to_dict(self) -> dict:
        """Serialize to JSON-compatible dict."""
        return {
            "positions": self.positions.tolist(),
            "side_len": self.side_len,
            "r_broadcast": self.r_broadcast,
            "edges": sorted([list(edge) for edge in self.edges]),
            "grid": list(self.grid) if self.grid else None,
        }

    @classmethod
    def from_dict(cls, data: dict) -> Topology:
        """Deserialize from dict."""
        grid = data.get("grid")
        return cls(
            positions=np.asarray(data["positions"], dtype=float).reshape(-1, 2),
            side_len=float(data["side_len"]),
            r_broadcast=float(data["r_broadcast"]),
            edges=frozenset((int(i), int(j)) for i, j in data["edges"]),
            grid=(int(grid[0]), int(grid[1]), float(grid[2])) if grid else None,
        )


@dataclass(frozen=True, eq=False)
class ShiftOperator:
    """Graph shift operator built on the deterministic graph G_0.

    Attributes:
        kind: Construction rule
        matrix: (N, N) shift matrix
        support: (N, N) boolean off-diagonal link support (the edge set E_0)
        lambda_max: Largest Laplacian eigenvalue, present for NORMALIZED_SHIFTED
    """
    kind: ShiftKind
    matrix: np.ndarray
    support: np.ndarray
    lambda_max: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrix", _frozen_array(self.matrix))
        object.__setattr__(self, "support", _frozen_array(self.support, dtype=bool))
        if self.matrix.shape != self.support.shape:
            raise DimensionMismatchError("shift matrix and support must have the same shape")

    @property
    def n(self) -> int:
        """Number of nodes."""
        return int(self.matrix.shape[0])


@dataclass(frozen=True, eq=False)
class ConnectionMatrix:
    """Per-link Bernoulli activation probabilities.

    Entry (i, j) is the probability that shift entry (i, j) is active at a
    given time; row i therefore collects the links driven by transmitter i.

    Attributes:
        entries: (N, N) probabilities, zero on the diagonal and off the support
        row_equalized: True when every supported entry of row i equals one q_i
    """
    entries: np.ndarray
    row_equalized: bool = False

    def __post_init__(self) -> None:
        entries = _frozen_array(self.entries)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise DimensionMismatchError(f"connection matrix must be square, got {entries.shape}")
        if not np.all(np.isfinite(entries)) or entries.min(initial=0.0) < 0.0 or entries.max(initial=0.0) > 1.0:
            raise SupportMismatchError("connection probabilities must lie in [0, 1]")
        if np.any(np.diag(entries) != 0.0):
            raise SupportMismatchError("connection matrix diagonal must be zero")
        object.__setattr__(self, "entries", entries)

    @property
    def n(self) -> int:
        """Number of nodes."""
        return int(self.entries.shape[0])

    def support(self) -> np.ndarray:
        """Boolean mask of links with non-zero probability."""
        return self.entries > 0.0

    def row_minimum(self) -> np.ndarray:
        """Smallest supported probability per row (1.0 for rows without links)."""
        masked = np.where(self.support(), self.entries, np.inf)
        minimum = masked.min(axis=1)
        return np.where(np.isfinite(minimum), minimum, 1.0)

    def is_deterministic(self) -> bool:
        """True when every supported link is always active."""
        return bool(np.all(self.entries[self.support()] == 1.0))


@dataclass(frozen=True, eq=False)
class Realization:
    """One Bernoulli draw G_t of the time-varying graph.

    Attributes:
        active_links: Directed links of E_0 that fired
        shift_t: Realized shift S_t with the base operator's construction
    """
    active_links: frozenset[tuple[int, int]]
    shift_t: np.ndarray


@dataclass(frozen=True, eq=False)
class CoefficientSet:
    """FIR graph filter coefficients.

    Attributes:
        order: Filter order L
        mode: Node-invariant or node-variant
        values: (L+1,) array for node-invariant sets, (L+1, N) for node-variant;
            row l holds the lag-l coefficient(s)

    Example:
        >>> CoefficientSet.invariant([1.0, -0.45, 0.2025]).order
        2
    """
    order: int
    mode: CoefficientMode
    values: np.ndarray

    def __post_init__(self) -> None:
        values = _frozen_array(self.values)
        expected_ndim = 1 if self.mode is CoefficientMode.NODE_INVARIANT else 2
        if values.ndim != expected_ndim or values.shape[0] != self.order + 1:
            raise DimensionMismatchError(
                f"{self.mode.value} coefficients of order {self.order} cannot have shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise DimensionMismatchError("coefficients must be finite")
        object.__setattr__(self, "values", values)

    @classmethod
    def invariant(cls, values: Any) -> CoefficientSet:
        """Build a node-invariant set from a length-(L+1) sequence."""
        array = np.asarray(values, dtype=float).reshape(-1)
        return cls(order=array.size - 1, mode=CoefficientMode.NODE_INVARIANT, values=array)

    @classmethod
    def variant(cls, values: Any) -> CoefficientSet:
        """Build a node-variant set from an (L+1, N) array."""
        array = np.atleast_2d(np.asarray(values, dtype=float))
        return cls(order=array.shape[0] - 1, mode=CoefficientMode.NODE_VARIANT, values=array)

    @property
    def is_variant(self) -> bool:
        return self.mode is CoefficientMode.NODE_VARIANT

    @property
    def n_nodes(self) -> int | None:
        """Node count for node-variant sets, None for node-invariant ones."""
        return int(self.values.shape[1]) if self.is_variant else None

    def term(self, lag: int) -> float | np.ndarray:
        """Scalar h_l (node-invariant) or vector h^(l) (node-variant)."""
        return self.values[lag]

    def as_node_variant(self, n: int) -> CoefficientSet:
        """Replicate an invariant set over ``n`` nodes (identity for variant sets)."""
        if self.is_variant:
            if self.n_nodes != n:
                raise DimensionMismatchError(f"coefficients span {self.n_nodes} nodes, expected {n}")
            return self
        return CoefficientSet.variant(np.repeat(self.values[:, None], n, axis=1))

    def to_dict(self) -> dict:
        """Serialize to JSON-compatible dict."""
        return {"order": self.order, "mode": self.mode.value, "values": self.values.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> CoefficientSet:
        """Deserialize from dict."""
        return cls(
            order=int(data["order"]),
            mode=CoefficientMode(data["mode"]),
            values=np.asarray(data["values"], dtype=float),
        )


@dataclass(frozen=True)
class RadioParams:
    """Physical-layer parameters; linear units are derived on access.

    Attributes:
        tx_power_dbm: Transmit power P in dBm
        noise_dbm: Background noise N0 in dBm
        nu: Path-loss exponent
        kappa: SINR threshold
        chi: Broadcast fraction, R_B = chi * R_m
        packet_bits: Packet length z in bits
        ber_consts: (varsigma_1, varsigma_2, varsigma_3) of the BER series
        r_broadcast_m: Explicit broadcast range overriding chi * R_m
    """
    tx_power_dbm: float = 0.0
    noise_dbm: float = -100.0
    nu: float = 2.5
    kappa: float = 1.0
    chi: float = 0.5
    packet_bits: int = 176
    ber_consts: tuple[float, int, float] = (1.0 / 30.0, 16, 20.0)
    r_broadcast_m: float | None = None

    def __post_init__(self) -> None:
        if not self.nu > 0:
            raise RadioModelError(f"path-loss exponent must be positive, got {self.nu}")
        if not self.kappa > 0:
            raise RadioModelError(f"SINR threshold must be positive, got {self.kappa}")
        if not 0.0 < self.chi < 1.0:
            raise RadioModelError(f"chi must lie in (0, 1), got {self.chi}")
        if self.packet_bits < 1:
            raise RadioModelError(f"packet length must be at least one bit, got {self.packet_bits}")
        if self.r_broadcast_m is not None and not self.r_broadcast_m > 0:
            raise RadioModelError(f"explicit broadcast range must be positive, got {self.r_broadcast_m}")

    @property
    def tx_power_mw(self) -> float:
        return 10.0 ** (self.tx_power_dbm / 10.0)

    @property
    def noise_mw(self) -> float:
        return 10.0 ** (self.noise_dbm / 10.0)

    def to_dict(self) -> dict:
        """Serialize to JSON-compatible dict."""
        return {
            "tx_power_dbm": self.tx_power_dbm,
            "noise_dbm": self.noise_dbm,
            "nu": self.nu,
            "kappa": self.kappa,
            "chi": self.chi,
            "packet_bits": self.packet_bits,
            "ber_consts": list(self.ber_consts),
            "r_broadcast_m": self.r_broadcast_m,
        }


@dataclass(frozen=True)
class Ranges:
    """Geometric radii derived from the radio model, in meters."""
    r_max: float
    r_broadcast: float
    r_collision: float
    r_preventing: float


@dataclass(frozen=True)
class NodeSlot:
    """Per-transmitter outcome of a schedule.

    Attributes:
        slot: Index of the slot in which the node (successfully) broadcasts
        sinr_min: Smallest SINR over the node's broadcast region
        pdr_min: Smallest PDR over the node's broadcast region
        isolated: True when the broadcast region is empty
    """
    slot: int
    sinr_min: float
    pdr_min: float
    isolated: bool = False


@dataclass
class Schedule:
    """Slot allocation plus the link-quality data derived from it.

    Attributes:
        kind: Protocol that produced the schedule
        slots: Transmitter set of every slot, in slot order
        per_node: Node id -> NodeSlot
        link_pdr: (tx, rx) -> PDR of the link
        acceptance: (tx, rx) -> acceptance probability p_ac (1.0 when not equalized)
        q_matrix: Connection matrix used by the filtering layer
    """
    kind: SchedulerKind
    slots: list[tuple[int, ...]]
    per_node: dict[int, NodeSlot] = field(default_factory=dict)
    link_pdr: dict[tuple[int, int], float] = field(default_factory=dict)
    acceptance: dict[tuple[int, int], float] = field(default_factory=dict)
    q_matrix: ConnectionMatrix | None = None

    @property
    def n_slots(self) -> int:
        """Number of slots T_s."""
        return len(self.slots)

    @property
    def isolated(self) -> list[int]:
        """Nodes whose broadcast region is empty."""
        return sorted(node for node, info in self.per_node.items() if info.isolated)

    def slot_of(self, node: int) -> int:
        return self.per_node[node].slot


@dataclass
class EventRecord:
    """Structured record of a protocol or run event.

    Attributes:
        ts: Logical timestamp (slot or control-round index)
        kind: Event type, e.g. "activate", "feasible", "decrement", "allocate"
        source: Emitter, e.g. "cdsa" or "lbpim"
        detail: Event-specific payload
    """
    ts: int
    kind: str
    source: str
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        """Serialize to JSON-compatible dict."""
        return {"ts": self.ts, "kind": self.kind, "source": self.source, "detail": self.detail}

    @classmethod
    def from_dict(cls, data: dict) -> EventRecord:
        """Deserialize from dict."""
        return cls(
            ts=int(data["ts"]),
            kind=data["kind"],
            source=data["source"],
            detail=data.get("detail", {}),
        )


@dataclass
class ProtocolTrace:
    """Event log of one protocol run.

    Attributes:
        events: Ordered event records
        control_messages: Control packets exchanged (CDSA) or announcement
            attempts (coloring set-up)
        setup_slots: Slots spent before the data slots start (coloring only)
    """
    events: list[EventRecord] = field(default_factory=list)
    control_messages: int = 0
    setup_slots: int = 0

    def of_kind(self, kind: str) -> list[EventRecord]:
        return [event for event in self.events if event.kind == kind]


@dataclass(frozen=True, eq=False)
class TradeoffProblem:
    """Bias-variance coefficient design problem.

    Attributes:
        target: Coefficients h for the deterministic graph
        s: Shift operator of G_0
        q: Connection matrix of the time-varying graph
        mu: Trade-off weight
        rho: Spectral-norm bound of S; None means spectral_bound(s)
    """
    target: CoefficientSet
    s: ShiftOperator
    q: ConnectionMatrix
    mu: float = 0.001
    rho: float | None = None

    @property
    def order(self) -> int:
        return self.target.order


@dataclass(frozen=True, eq=False)
class OptResult:
    """Outcome of a coefficient optimization."""
    coefficients: CoefficientSet
    bias_fro_sq: float
    variance_bound: float
    objective: float
    iterations: int
    converged: bool = True
    warm_objective: float = math.nan
    rho: float = math.nan

    def to_dict(self) -> dict:
        """Serialize to JSON-compatible dict."""
        return {
            "coefficients": self.coefficients.to_dict(),
            "bias_fro_sq": self.bias_fro_sq,
            "variance_bound": self.variance_bound,
            "objective": self.objective,
            "iterations": self.iterations,
            "converged": self.converged,
            "warm_objective": self.warm_objective,
            "rho": self.rho,
        }


@dataclass
class MetricsReport:
    """Filtering accuracy of one experiment point.

    Attributes:
        label: Sweep point or scheduler name
        nse: ||y - mean(y_t)||^2 / ||y||^2
        mean_error: Mean of |y_t - y| over nodes and trials (headline)
        mean_signed_error: Mean of y_t - y over nodes and trials
        emp_variance: tr(Cov[y_t]) / N with the unbiased estimator
        emp_second_moment: tr(E[e e^T]) / N
        variance_bound_value: ||x||^2 / N * (sum_l theta_l)^2
        t_slots: Slots needed for one filtering round (None without a scheduler)
        rho_violations: Checked realizations with ||S_t||_2 > rho
        trials: Trials per seed
        seeds: Seeds that contributed
        per_seed: One flat metrics dict per seed
    """
    label: str
    nse: float
    mean_error: float
    mean_signed_error: float
    emp_variance: float
    emp_second_moment: float
    variance_bound_value: float
    t_slots: float | None = None
    rho_violations: int = 0
    trials: int = 0
    seeds: list[int] = field(default_factory=list)
    per_seed: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        """Serialize to JSON-compatible dict."""
        return {
            "label": self.label,
            "nse": self.nse,
            "mean_error": self.mean_error,
            "mean_signed_error": self.mean_signed_error,
            "emp_variance": self.emp_variance,
            "emp_second_moment": self.emp_second_moment,
            "variance_bound_value": self.variance_bound_value,
            "t_slots": self.t_slots,
            "rho_violations": self.rho_violations,
            "trials": self.trials,
            "seeds": list(self.seeds),
            "per_seed": list(self.per_seed),
        }


@dataclass
class RunManifest:
    """Record of one CLI run, sufficient to reproduce it.

    Attributes:
        command: Subcommand that ran
        config_path: Configuration file given on the command line
        config_echo: Fully defaulted configuration as a dict
        master_seed: Seed in force
        versions: Package and dependency versions
        out_dir: Output directory
        files: Emitted files as {"path", "sha256"} entries
    """
    command: str
    config_path: str | None
    config_echo: dict
    master_seed: int
    versions: dict
    out_dir: str
    files: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        """Serialize to JSON-compatible dict."""
        return {
            "command": self.command,
            "config_path": self.config_path,
            "config_echo": self.config_echo,
            "master_seed": self.master_seed,
            "versions": self.versions,
            "out_dir": self.out_dir,
            "files": list(self.files),
        }

    @classmethod
    def from_dict(cls, data: dict) -> RunManifest:
        """Deserialize from dict."""
        return cls(
            command=data["command"],
            config_path=data.get("config_path"),
            config_echo=data.get("config_echo", {}),
            master_seed=int(data["master_seed"]),
            versions=data.get("versions", {}),
            out_dir=data["out_dir"],
            files=data.get("files", []),
        )
