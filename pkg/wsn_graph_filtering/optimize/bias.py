"""Bias of random-graph filters with respect to their deterministic target."""

from __future__ import annotations

import numpy as np

from wsn_graph_filtering.exceptions import DimensionMismatchError, ModeMismatchError, OptimizationError
from wsn_graph_filtering.filters.fir import filter_matrix
from wsn_graph_filtering.graph.shift import expected_shift
from wsn_graph_filtering.models import (
    CoefficientSet,
    ConnectionMatrix,
    DiagonalModel,
    ShiftOperator,
)


def shift_powers(matrix: np.ndarray, order: int) -> np.ndarray:
    """Stack [I, M, M^2, ..., M^order] into an (order+1, N, N) array."""
    n = matrix.shape[0]
    powers = np.empty((order + 1, n, n))
    powers[0] = np.eye(n)
    for lag in range(1, order + 1):
        powers[lag] = matrix @ powers[lag - 1]
    return powers


def unbiased_scaling(target: CoefficientSet, p: float | np.ndarray) -> CoefficientSet:
    """Scale the lag-l coefficients by p^-l.

    ``p`` is one probability, or for node-variant sets one probability per
    node (row-wise scaling with each node's equalized q_i).

    Raises:
        OptimizationError: If any probability lies outside (0, 1]
    """
    probs = np.asarray(p, dtype=float)
    if np.any(~(probs > 0.0)) or np.any(probs > 1.0):
        raise OptimizationError(f"scaling probability must lie in (0, 1], got {p}")
    lags = np.arange(target.order + 1, dtype=float)
    if probs.ndim == 0:
        factors = float(probs) ** -lags
        if target.is_variant:
            factors = factors[:, None]
        return CoefficientSet(target.order, target.mode, target.values * factors)
    if not target.is_variant or probs.shape != (target.n_nodes,):
        raise DimensionMismatchError("per-node scaling needs node-variant coefficients of matching size")
    return CoefficientSet(target.order, target.mode, target.values * probs[None, :] ** -lags[:, None])


def _check_pair(phi: CoefficientSet, target: CoefficientSet) -> None:
    if phi.mode is not target.mode:
        raise ModeMismatchError(f"{phi.mode.value} coefficients compared with a {target.mode.value} target")
    if phi.order != target.order:
        raise DimensionMismatchError(f"order {phi.order} coefficients compared with an order {target.order} target")


def bias_matrix(
    phi: CoefficientSet,
    target: CoefficientSet,
    s: ShiftOperator,
    p: ConnectionMatrix,
    diagonal: DiagonalModel = DiagonalModel.REALIZED_DEGREE,
) -> np.ndarray:
    """B = sum_l (phi-term) S_bar^l - sum_l (h-term) S^l with S_bar = E[S_t].

    Raises:
        ModeMismatchError: If phi and target differ in mode
        DimensionMismatchError: If their orders differ
    """
    _check_pair(phi, target)
    s_bar = expected_shift(s, p, diagonal)
    return filter_matrix(s_bar, phi) - filter_matrix(s.matrix, target)


def operator_nse(
    phi: CoefficientSet,
    target: CoefficientSet,
    s: ShiftOperator,
    p: ConnectionMatrix,
    diagonal: DiagonalModel = DiagonalModel.REALIZED_DEGREE,
) -> float:
    """Signal-independent NSE ||H_bar - H||_F^2 / ||H||_F^2 of the filter operators."""
    reference = np.linalg.norm(filter_matrix(s.matrix, target)) ** 2
    if reference == 0.0:
        raise OptimizationError("target filter is the zero operator")
    return float(np.linalg.norm(bias_matrix(phi, target, s, p, diagonal)) ** 2 / reference)
