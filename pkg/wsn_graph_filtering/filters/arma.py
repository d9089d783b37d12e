"""First-order ARMA recursion and its Tikhonov fixed point."""

from __future__ import annotations

import warnings

import numpy as np
import scipy.linalg

from wsn_graph_filtering.exceptions import AsymmetricShiftError, DimensionMismatchError, NumericalError
from wsn_graph_filtering.models import CoefficientMode, CoefficientSet


def run_arma1(
    s: np.ndarray,
    psi: float,
    phi: float,
    x: np.ndarray,
    y0: np.ndarray,
    t: int,
) -> np.ndarray:
    """Run y_k = psi S y_{k-1} + phi x for ``t`` steps starting at ``y0``.

    The recursion diverges when |psi| * ||S||_2 >= 1; callers choose psi.
    """
    if t < 0:
        raise ValueError(f"step count must be non-negative, got {t}")
    s = np.asarray(s, dtype=float)
    x = np.asarray(x, dtype=float)
    y = np.array(y0, dtype=float)
    if x.shape != y.shape or s.shape != (x.size, x.size):
        raise DimensionMismatchError("shift, input and initial state sizes disagree")
    forcing = phi * x
    for _ in range(t):
        y = psi * (s @ y) + forcing
    return y


def arma1_fir_coefficients(phi: float, psi: float, order: int) -> CoefficientSet:
    """Node-invariant FIR taps reproducing ``order`` ARMA1 steps from y0 = x.

    Returns [phi, phi*psi, ..., phi*psi^(T-1), psi^T] with T = order.

    Example:
        >>> arma1_fir_coefficients(1.0, 0.5, 2).values.tolist()
        [1.0, 0.5, 0.25]
    """
    if order < 0:
        raise ValueError(f"order must be non-negative, got {order}")
    taps = phi * psi ** np.arange(order + 1, dtype=float)
    taps[order] = psi**order
    return CoefficientSet.invariant(taps)


def tikhonov_target(
    order: int,
    w: float,
    n: int | None = None,
    mode: CoefficientMode = CoefficientMode.NODE_INVARIANT,
) -> CoefficientSet:
    """Truncated Tikhonov target h_l = (-w)^l (ARMA1 taps with psi = -w, phi = 1)."""
    invariant = arma1_fir_coefficients(1.0, -w, order)
    if mode is CoefficientMode.NODE_VARIANT:
        if n is None:
            raise DimensionMismatchError("node-variant target needs the node count")
        return invariant.as_node_variant(n)
    return invariant


def require_symmetric(s: np.ndarray) -> None:
    """Raise AsymmetricShiftError unless ``s`` is symmetric to floating-point tolerance."""
    if not np.allclose(s, s.T):
        raise AsymmetricShiftError("Tikhonov denoising needs a symmetric shift operator")


def tikhonov_solve(s: np.ndarray, w: float, x: np.ndarray) -> np.ndarray:
    """Closed-form Tikhonov denoiser v* = (I + w S)^-1 x.

    Raises:
        AsymmetricShiftError: If S is not symmetric
        NumericalError: If I + w S is singular or numerically ill-conditioned
    """
    s = np.asarray(s, dtype=float)
    x = np.asarray(x, dtype=float)
    if s.shape != (x.size, x.size):
        raise DimensionMismatchError(f"shift {s.shape} does not match signal of size {x.size}")
    require_symmetric(s)
    system = np.eye(x.size) + w * s
    with warnings.catch_warnings():
        warnings.simplefilter("error", scipy.linalg.LinAlgWarning)
        try:
            return scipy.linalg.solve(system, x)
        except (np.linalg.LinAlgError, scipy.linalg.LinAlgWarning) as e:
            raise NumericalError(f"Tikhonov system I + {w} S is singular: {e}") from e
