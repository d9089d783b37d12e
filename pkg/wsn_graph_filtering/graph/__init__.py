"""Topologies, shift operators and random graph realizations."""

from wsn_graph_filtering.graph.shift import (
    adjacency_matrix,
    build_shift,
    check_support,
    connection_from_pdr,
    equalize_rows,
    expected_shift,
    laplacian_from_weights,
    laplacian_lambda_max,
    random_connection,
    sample_realization,
    uniform_connection,
)
from wsn_graph_filtering.graph.topology import (
    average_degree,
    check_connectivity,
    generate_topology,
    grid_topology,
    to_networkx,
    topology_from_positions,
)

__all__ = [
    "adjacency_matrix",
    "average_degree",
    "build_shift",
    "check_connectivity",
    "check_support",
    "connection_from_pdr",
    "equalize_rows",
    "expected_shift",
    "generate_topology",
    "grid_topology",
    "laplacian_from_weights",
    "laplacian_lambda_max",
    "random_connection",
    "sample_realization",
    "to_networkx",
    "topology_from_positions",
    "uniform_connection",
]
