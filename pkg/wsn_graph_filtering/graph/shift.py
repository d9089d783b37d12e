"""Shift operators, connection matrices and random graph realizations.

Entry (i, j) of a ConnectionMatrix is the activation probability of shift
entry (i, j). Laplacian-derived shifts keep their diagonal tied to the
realized out-degree, so a realization with no active links in row i has a
zero Laplacian row i.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from wsn_graph_filtering.exceptions import NumericalError, SupportMismatchError
from wsn_graph_filtering.models import (
    ConnectionMatrix,
    DiagonalModel,
    Realization,
    ShiftKind,
    ShiftOperator,
    Topology,
)


def adjacency_matrix(topology: Topology) -> np.ndarray:
    """0/1 adjacency matrix of the reachability graph."""
    return topology.adjacency()


def laplacian_from_weights(weights: np.ndarray) -> np.ndarray:
    """Directed Laplacian D - W with D the out-degree (row sum) matrix."""
    return np.diag(weights.sum(axis=1)) - weights


def laplacian_lambda_max(laplacian: np.ndarray) -> float:
    """Largest eigenvalue of a Laplacian (largest real part if non-symmetric).

    Raises:
        NumericalError: If the eigen-solve fails
    """
    try:
        if np.allclose(laplacian, laplacian.T):
            eigenvalues = scipy.linalg.eigvalsh(laplacian)
        else:
            eigenvalues = scipy.linalg.eigvals(laplacian).real
    except (np.linalg.LinAlgError, ValueError) as e:
        raise NumericalError(f"Laplacian eigen-solve failed: {e}") from e
    return float(np.max(eigenvalues))


def _assemble(kind: ShiftKind, weights: np.ndarray, lambda_max: float | None) -> np.ndarray:
    if kind is ShiftKind.ADJACENCY:
        return weights.copy()
    laplacian = laplacian_from_weights(weights)
    if kind is ShiftKind.DIRECTED_LAPLACIAN:
        return laplacian
    return laplacian / lambda_max - 0.5 * np.eye(weights.shape[0])


def build_shift(topology: Topology, kind: ShiftKind) -> ShiftOperator:
    """Build the shift operator of the deterministic graph G_0.

    Args:
        topology: Deployment whose edge set defines the support
        kind: Construction rule

    Returns:
        ShiftOperator; lambda_max is populated for NORMALIZED_SHIFTED

    Raises:
        NumericalError: If the Laplacian eigen-solve fails or the graph has
            no edges (lambda_max = 0) for NORMALIZED_SHIFTED
    """
    adjacency = adjacency_matrix(topology)
    lambda_max = None
    if kind is ShiftKind.NORMALIZED_SHIFTED:
        lambda_max = laplacian_lambda_max(laplacian_from_weights(adjacency))
        if not lambda_max > 0:
            raise NumericalError("normalized shift needs a graph with at least one edge")
    return ShiftOperator(
        kind=kind,
        matrix=_assemble(kind, adjacency, lambda_max),
        support=adjacency > 0,
        lambda_max=lambda_max,
    )


def check_support(s: ShiftOperator, p: ConnectionMatrix) -> None:
    """Raise SupportMismatchError unless ``p`` is supported exactly on the links of ``s``."""
    if p.n != s.n:
        raise SupportMismatchError(f"connection matrix spans {p.n} nodes, shift spans {s.n}")
    if not np.array_equal(p.support(), s.support):
        raise SupportMismatchError("connection matrix support differs from the shift's link set")


def expected_shift(
    s: ShiftOperator,
    p: ConnectionMatrix,
    diagonal: DiagonalModel = DiagonalModel.REALIZED_DEGREE,
) -> np.ndarray:
    """Expected shift E[S_t] under independent link activation.

    With the default diagonal model this is P o S for adjacency shifts,
    P o L with realized-degree diagonal for the directed Laplacian, and
    lambda_max^-1 (P o L) - 0.5 I for the normalized shift. HADAMARD returns
    the literal P' o S with p'_ii = q_i.
    """
    check_support(s, p)
    entries = np.array(p.entries)
    if diagonal is DiagonalModel.HADAMARD:
        np.fill_diagonal(entries, p.row_minimum())
        return entries * s.matrix
    weights = entries * s.support
    return _assemble(s.kind, weights, s.lambda_max)


def sample_realization(s: ShiftOperator, p: ConnectionMatrix, rng: np.random.Generator) -> Realization:
    """Draw one realization G_t; each supported link fires independently."""
    check_support(s, p)
    fired = (rng.random((s.n, s.n)) < p.entries) & s.support
    rows, cols = np.nonzero(fired)
    return Realization(
        active_links=frozenset(zip(rows.tolist(), cols.tolist())),
        shift_t=_assemble(s.kind, fired.astype(float), s.lambda_max),
    )


def equalize_rows(p: ConnectionMatrix) -> ConnectionMatrix:
    """Set every supported entry of row i to the row's smallest supported probability."""
    support = p.support()
    entries = np.where(support, p.row_minimum()[:, None], 0.0)
    return ConnectionMatrix(entries=entries, row_equalized=True)


def uniform_connection(s: ShiftOperator, q: float) -> ConnectionMatrix:
    """Connection matrix with probability ``q`` on every link of ``s``."""
    if not 0.0 < q <= 1.0:
        raise SupportMismatchError(f"link probability must lie in (0, 1], got {q}")
    return ConnectionMatrix(entries=np.where(s.support, q, 0.0), row_equalized=True)


def random_connection(s: ShiftOperator, rng: np.random.Generator, low: float = 0.05) -> ConnectionMatrix:
    """Connection matrix with independent uniform(low, 1] probabilities on the links of ``s``."""
    draws = 1.0 - rng.random((s.n, s.n)) * (1.0 - low)
    return ConnectionMatrix(entries=np.where(s.support, draws, 0.0))


def connection_from_pdr(
    n: int,
    link_pdr: dict[tuple[int, int], float],
    row_equalized: bool = False,
) -> ConnectionMatrix:
    """Connection matrix whose (tx, rx) entry is the PDR of that link."""
    entries = np.zeros((n, n))
    for (tx, rx), pdr in link_pdr.items():
        entries[tx, rx] = pdr
    return ConnectionMatrix(entries=entries, row_equalized=row_equalized)
