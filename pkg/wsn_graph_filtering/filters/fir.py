"""Vertex-domain FIR graph filters on fixed and time-varying graphs.

All filters are evaluated through the shift recursion x^(l) = S x^(l-1);
no matrix powers are formed, mirroring the one-hop exchanges each node
performs per filter tap.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from wsn_graph_filtering.exceptions import DimensionMismatchError, RealizationCountError
from wsn_graph_filtering.models import CoefficientSet, Realization


def _check_signal(s: np.ndarray, c: CoefficientSet, x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    n = s.shape[0]
    if s.ndim != 2 or s.shape[1] != n:
        raise DimensionMismatchError(f"shift must be square, got {s.shape}")
    if x.shape != (n,):
        raise DimensionMismatchError(f"signal of shape {x.shape} does not match {n} nodes")
    if c.is_variant and c.n_nodes != n:
        raise DimensionMismatchError(f"coefficients span {c.n_nodes} nodes, graph has {n}")
    return x


def apply_fir(s: np.ndarray, c: CoefficientSet, x: np.ndarray) -> np.ndarray:
    """Filter ``x`` with sum_l h_l S^l x (or sum_l diag(h^(l)) S^l x).

    Args:
        s: (N, N) shift matrix
        c: Coefficient set of order L
        x: Length-N graph signal

    Returns:
        Filtered graph signal

    Raises:
        DimensionMismatchError: If shapes disagree
    """
    s = np.asarray(s, dtype=float)
    x = _check_signal(s, c, x)
    shifted = x
    y = c.term(0) * shifted
    for lag in range(1, c.order + 1):
        shifted = s @ shifted
        y = y + c.term(lag) * shifted
    return y


def expected_output(s_bar: np.ndarray, c: CoefficientSet, x: np.ndarray) -> np.ndarray:
    """Expected time-varying output, i.e. the FIR filter evaluated on E[S_t]."""
    return apply_fir(s_bar, c, x)


def _as_matrix(realization: np.ndarray | Realization) -> np.ndarray:
    if isinstance(realization, Realization):
        return realization.shift_t
    return np.asarray(realization, dtype=float)


def apply_timevarying(
    realizations: Sequence[np.ndarray | Realization],
    c: CoefficientSet,
    x: np.ndarray,
) -> np.ndarray:
    """Filter ``x`` over L graph realizations.

    Realizations are ordered oldest first, ``[S_{t-L+1}, ..., S_t]``; the
    lag-l term uses the transition product S_t ... S_{t-l+1} x. Each node
    keeps one partial product per lag and each realization multiplies the
    whole stack once, as a pipelined distributed implementation would.

    Raises:
        RealizationCountError: If the number of realizations is not L
        DimensionMismatchError: If shapes disagree
    """
    if len(realizations) != c.order:
        raise RealizationCountError(
            f"order-{c.order} filter needs {c.order} realizations, got {len(realizations)}"
        )
    if c.order == 0:
        x = np.asarray(x, dtype=float)
        if c.is_variant and x.shape != (c.n_nodes,):
            raise DimensionMismatchError(f"signal of shape {x.shape} does not match coefficients")
        return c.term(0) * x

    matrices = [_as_matrix(r) for r in realizations]
    x = _check_signal(matrices[0], c, x)
    n = x.shape[0]

    # states[:, m] holds the lag-m partial product; column 0 is x itself
    states = np.zeros((n, c.order + 1))
    states[:, 0] = x
    for step, s_k in enumerate(matrices, start=1):
        if s_k.shape != (n, n):
            raise DimensionMismatchError(f"realization {step} has shape {s_k.shape}")
        states[:, 1 : step + 1] = s_k @ states[:, :step]

    y = c.term(0) * x
    for lag in range(1, c.order + 1):
        y = y + c.term(lag) * states[:, lag]
    return y


def filter_matrix(s: np.ndarray, c: CoefficientSet) -> np.ndarray:
    """Dense N x N operator sum_l diag(h^(l)) S^l of the filter."""
    s = np.asarray(s, dtype=float)
    n = s.shape[0]
    if c.is_variant and c.n_nodes != n:
        raise DimensionMismatchError(f"coefficients span {c.n_nodes} nodes, graph has {n}")
    power = np.eye(n)
    operator = np.zeros((n, n))
    for lag in range(c.order + 1):
        operator += np.reshape(c.term(lag), (-1, 1)) * power
        power = s @ power
    return operator
