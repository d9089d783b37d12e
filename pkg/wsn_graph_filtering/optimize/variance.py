"""Variance bound of random-graph filters and the spectral-norm bound it needs."""

from __future__ import annotations

import logging

import numpy as np

from wsn_graph_filtering.exceptions import SpectralBoundError
from wsn_graph_filtering.models import CoefficientSet, ShiftOperator

logger = logging.getLogger(__name__)

SAFETY_FACTOR = 1.01


def lag_weights(phi: CoefficientSet, rho: float) -> np.ndarray:
    """theta_l = rho^l * ||diag(phi^(l))||_2, one entry per lag."""
    magnitudes = np.abs(phi.values)
    if phi.is_variant:
        magnitudes = magnitudes.max(axis=1) if magnitudes.shape[1] else np.zeros(phi.order + 1)
    return rho ** np.arange(phi.order + 1, dtype=float) * magnitudes


def variance_bound(
    phi: CoefficientSet,
    rho: float,
    n: int,
    x_norm_sq: float | None = None,
) -> tuple[float, float | None]:
    """Upper bound on the per-node output variance of a random-graph filter.

    Args:
        phi: Coefficients in use
        rho: Bound on the spectral norm of every realized shift
        n: Number of nodes
        x_norm_sq: ||x||^2 of the input, if known

    Returns:
        (factor, total): factor is (sum_l theta_l)^2, total is
        ||x||^2 / N * factor or None when x_norm_sq is not given
    """
    if rho < 0:
        raise ValueError(f"rho must be non-negative, got {rho}")
    factor = float(lag_weights(phi, rho).sum() ** 2)
    total = None if x_norm_sq is None else float(x_norm_sq) / n * factor
    return factor, total


def spectral_bound(
    s: ShiftOperator | np.ndarray,
    tol: float = 1e-9,
    max_iter: int = 20000,
) -> float:
    """Upper bound rho >= ||S||_2 by power iteration on S^T S.

    The converged estimate is inflated by SAFETY_FACTOR.

    Raises:
        SpectralBoundError: If the iteration does not settle within max_iter
    """
    matrix = np.asarray(s.matrix if isinstance(s, ShiftOperator) else s, dtype=float)
    gram = matrix.T @ matrix
    n = gram.shape[0]
    if not np.any(gram):
        return 0.0

    vector = np.linspace(1.0, 2.0, n)
    vector /= np.linalg.norm(vector)
    estimate = 0.0
    for iteration in range(1, max_iter + 1):
        image = gram @ vector
        norm = np.linalg.norm(image)
        if norm == 0.0:
            # start vector in the null space; restart on a basis vector
            vector = np.zeros(n)
            vector[iteration % n] = 1.0
            continue
        vector = image / norm
        updated = float(vector @ gram @ vector)
        if abs(updated - estimate) <= tol * abs(updated):
            logger.debug("spectral bound converged after %d iterations", iteration)
            return SAFETY_FACTOR * float(np.sqrt(updated))
        estimate = updated
    raise SpectralBoundError(f"power iteration did not converge in {max_iter} iterations")
