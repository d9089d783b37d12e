"""Node deployments and their geometric reachability graphs."""

from __future__ import annotations

import networkx as nx
import numpy as np

from wsn_graph_filtering.exceptions import TopologyError
from wsn_graph_filtering.models import Topology


def _edges_within(positions: np.ndarray, r_broadcast: float) -> frozenset[tuple[int, int]]:
    diff = positions[:, None, :] - positions[None, :, :]
    dist = np.hypot(diff[..., 0], diff[..., 1])
    reach = dist <= r_broadcast
    np.fill_diagonal(reach, False)
    rows, cols = np.nonzero(reach)
    return frozenset(zip(rows.tolist(), cols.tolist()))


def topology_from_positions(
    positions: np.ndarray,
    side_len: float,
    r_broadcast: float,
    grid: tuple[int, int, float] | None = None,
) -> Topology:
    """Build a topology from explicit node positions.

    Args:
        positions: (N, 2) coordinates in meters
        side_len: Side of the deployment square in meters
        r_broadcast: Broadcast range R_B in meters
        grid: Lattice description when the positions form a grid

    Returns:
        Topology whose edges join every pair at distance <= r_broadcast

    Raises:
        TopologyError: If the geometry is invalid or a node lies outside
            the deployment square
    """
    positions = np.asarray(positions, dtype=float)
    if positions.ndim != 2 or positions.shape[1] != 2 or positions.shape[0] < 1:
        raise TopologyError(f"positions must have shape (N, 2) with N >= 1, got {positions.shape}")
    if not side_len > 0:
        raise TopologyError(f"side_len must be positive, got {side_len}")
    if not r_broadcast > 0:
        raise TopologyError(f"r_broadcast must be positive, got {r_broadcast}")
    if not np.all(np.isfinite(positions)):
        raise TopologyError("positions must be finite")
    if positions.min() < 0.0 or positions.max() > side_len:
        raise TopologyError(f"positions must lie within [0, {side_len}]^2")

    return Topology(
        positions=positions,
        side_len=float(side_len),
        r_broadcast=float(r_broadcast),
        edges=_edges_within(positions, r_broadcast),
        grid=grid,
    )


def generate_topology(n: int, side_len: float, r_broadcast: float, seed: int) -> Topology:
    """Deploy ``n`` nodes uniformly at random on a square of side ``side_len``.

    The result may be disconnected; use check_connectivity to test it.

    Example:
        >>> topo = generate_topology(100, 150.0, 70.0, seed=7)
        >>> topo.n
        100
    """
    if n < 2:
        raise TopologyError(f"random deployments need at least two nodes, got {n}")
    if not side_len > 0 or not r_broadcast > 0:
        raise TopologyError("side_len and r_broadcast must be positive")

    rng = np.random.default_rng(seed)
    positions = rng.uniform(0.0, side_len, size=(n, 2))
    return topology_from_positions(positions, side_len, r_broadcast)


def grid_topology(rows: int, cols: int, spacing: float, r_broadcast: float) -> Topology:
    """Place ``rows * cols`` nodes on a lattice with the given spacing.

    Node ids run row-major. The deployment side is the lattice extent, or
    ``spacing`` for a single node.
    """
    if rows < 1 or cols < 1:
        raise TopologyError(f"grid needs at least one row and column, got {rows}x{cols}")
    if not spacing > 0:
        raise TopologyError(f"grid spacing must be positive, got {spacing}")

    ys, xs = np.meshgrid(np.arange(rows), np.arange(cols), indexing="ij")
    positions = np.column_stack([xs.ravel(), ys.ravel()]).astype(float) * spacing
    side_len = (max(rows, cols) - 1) * spacing or spacing
    return topology_from_positions(positions, side_len, r_broadcast, grid=(rows, cols, float(spacing)))


def to_networkx(topology: Topology) -> nx.Graph:
    """Undirected reachability graph on the topology's edge set."""
    graph = nx.Graph()
    graph.add_nodes_from(range(topology.n))
    graph.add_edges_from(topology.edges)
    return graph


def check_connectivity(topology: Topology) -> bool:
    """True iff the undirected reachability graph is connected."""
    if topology.n <= 1:
        return True
    return bool(nx.is_connected(to_networkx(topology)))


def average_degree(topology: Topology) -> float:
    """Mean out-degree of the reachability graph."""
    return len(topology.edges) / topology.n
