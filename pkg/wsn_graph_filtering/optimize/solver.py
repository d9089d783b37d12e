"""Coefficient design for filtering over random graphs.

The objective is ||B||_F^2 + mu * (sum_l rho^l max_i |phi_i^(l)|)^2. The
bias part is quadratic and row-separable, so mu = 0 is solved exactly by
least squares; mu > 0 adds a convex max-abs term handled by a projected,
normalized subgradient method started from the least-squares solution.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from wsn_graph_filtering.exceptions import OptimizationError
from wsn_graph_filtering.graph.shift import expected_shift
from wsn_graph_filtering.models import (
    CoefficientSet,
    DiagonalModel,
    OptResult,
    TradeoffProblem,
)
from wsn_graph_filtering.optimize.bias import shift_powers, unbiased_scaling
from wsn_graph_filtering.optimize.variance import spectral_bound

logger = logging.getLogger(__name__)

# floor of the relative-progress scale when the objective reaches zero
_TINY = 1e-300


@dataclass(frozen=True)
class SolverSettings:
    """Stopping rules of the subgradient phase.

    Iterations are grouped into windows of ``patience`` iterations. A window
    whose best objective improves by no more than ``tol`` relative to its
    value at the start of the window halves the step.

    Attributes:
        max_iter: Hard iteration cap
        tol: Relative improvement per window that counts as progress
        patience: Window length in iterations
        max_restarts: Step halvings before the run is declared converged
        step_scale: Initial step length; None scales it to the start point
    """
    max_iter: int = 50_000
    tol: float = 1e-6
    patience: int = 500
    max_restarts: int = 12
    step_scale: float | None = None


class _Objective:
    """Trade-off objective of one problem, with a subgradient oracle.

    The expected shift powers and the target operator are computed once;
    every evaluation afterwards is a pair of einsum contractions. Values
    are (L+1,) arrays for node-invariant problems and (L+1, N) arrays for
    node-variant ones.

    Args:
        problem: Target, shift, connection matrix and mu
        rho: Spectral bound on the realized shifts
        diagonal: Diagonal model of the expected shift
    """

    def __init__(self, problem: TradeoffProblem, rho: float, diagonal: DiagonalModel):
        self.mu = problem.mu
        self.rho = rho
        self.variant = problem.target.is_variant
        self.order = problem.order
        s_bar = expected_shift(problem.s, problem.q, diagonal)
        self.powers = shift_powers(s_bar, self.order)
        target_powers = shift_powers(problem.s.matrix, self.order)
        self.reference = self._operator(problem.target.values, target_powers)
        self.rho_lags = rho ** np.arange(self.order + 1, dtype=float)

    def _operator(self, values: np.ndarray, powers: np.ndarray) -> np.ndarray:
        if self.variant:
            return np.einsum("li,lij->ij", values, powers)
        return np.einsum("l,lij->ij", values, powers)

    def bias(self, values: np.ndarray) -> np.ndarray:
        """Bias matrix B of ``values`` against the target operator."""
        return self._operator(values, self.powers) - self.reference

    def spread(self, values: np.ndarray) -> float:
        """sum_l rho^l max_i |phi_i^(l)|; the variance factor is its square."""
        magnitudes = np.abs(values)
        if self.variant:
            magnitudes = magnitudes.max(axis=1)
        return float(self.rho_lags @ magnitudes)

    def value(self, values: np.ndarray) -> tuple[float, float, float]:
        """Return (objective, ||B||_F^2, variance factor)."""
        bias_sq = float(np.sum(self.bias(values) ** 2))
        variance = self.spread(values) ** 2
        return bias_sq + self.mu * variance, bias_sq, variance

    def subgradient(self, values: np.ndarray) -> np.ndarray:
        """One subgradient of the objective at ``values``.

        The max-abs term contributes only through the node attaining the
        maximum at each lag.
        """
        bias = self.bias(values)
        if self.variant:
            grad = 2.0 * np.einsum("ij,lij->li", bias, self.powers)
            spread = self.spread(values)
            # np.argmax breaks ties toward the lowest node index
            peaks = np.argmax(np.abs(values), axis=1)
            lags = np.arange(self.order + 1)
            grad[lags, peaks] += (
                2.0 * self.mu * spread * self.rho_lags * np.sign(values[lags, peaks])
            )
            return grad
        grad = 2.0 * np.einsum("ij,lij->l", bias, self.powers)
        return grad + 2.0 * self.mu * self.spread(values) * self.rho_lags * np.sign(values)


def warm_start(problem: TradeoffProblem) -> CoefficientSet:
    """Unbiased-scaling start point.

    Node-variant sets scale row i by q_i^-l with q_i the smallest supported
    probability of row i; node-invariant sets use the mean supported
    probability.
    """
    if problem.target.is_variant:
        return unbiased_scaling(problem.target, problem.q.row_minimum())
    supported = problem.q.entries[problem.q.support()]
    mean_prob = float(supported.mean()) if supported.size else 1.0
    return unbiased_scaling(problem.target, mean_prob)


def least_squares_coefficients(
    problem: TradeoffProblem,
    reference: CoefficientSet | None = None,
    diagonal: DiagonalModel = DiagonalModel.REALIZED_DEGREE,
) -> CoefficientSet:
    """Exact minimizer of ||B||_F^2.

    Node-variant problems split into one (L+1)-unknown least-squares fit per
    row of B. Rank-deficient fits return the solution closest to
    ``reference`` (the warm start by default).
    """
    reference = reference or warm_start(problem)
    s_bar = expected_shift(problem.s, problem.q, diagonal)
    powers = shift_powers(s_bar, problem.order)
    target_powers = shift_powers(problem.s.matrix, problem.order)

    if problem.target.is_variant:
        goal = np.einsum("li,lij->ij", problem.target.values, target_powers)
        values = np.empty_like(reference.values)
        for node in range(problem.s.n):
            design = powers[:, node, :].T
            residual = goal[node] - design @ reference.values[:, node]
            step, *_ = np.linalg.lstsq(design, residual, rcond=None)
            values[:, node] = reference.values[:, node] + step
        return CoefficientSet.variant(values)

    goal = np.einsum("l,lij->ij", problem.target.values, target_powers).ravel()
    design = powers.reshape(problem.order + 1, -1).T
    residual = goal - design @ reference.values
    step, *_ = np.linalg.lstsq(design, residual, rcond=None)
    return CoefficientSet.invariant(reference.values + step)


def _box_radius(objective: _Objective, warm_value: float) -> np.ndarray:
    """Per-lag bound on |phi^(l)| that contains every minimizer.

    Returns an array that broadcasts against the coefficient values; lags
    with rho^l = 0 are unbounded.
    """
    # any minimizer has mu * spread^2 <= f(warm), so rho^l |phi^(l)| <= sqrt(f(warm) / mu)
    bound = math.sqrt(warm_value / objective.mu)
    with np.errstate(divide="ignore"):
        radius = np.where(objective.rho_lags > 0, bound / objective.rho_lags, np.inf)
    return radius[:, None] if objective.variant else radius


def _subgradient_descent(
    objective: _Objective,
    start: np.ndarray,
    radius: np.ndarray,
    settings: SolverSettings,
) -> tuple[np.ndarray, float, int, bool]:
    """Projected subgradient descent with normalized, diminishing steps.

    The k-th step after a restart moves step_scale / sqrt(k) along the
    normalized subgradient and clips back into the box ``radius``. At the
    end of each window of ``settings.patience`` iterations the best
    objective is compared with its value when the window opened; too little
    relative progress halves the step and restarts from the best iterate.

    Args:
        objective: Objective and subgradient oracle
        start: Start point, already inside the box
        radius: Box half-widths from _box_radius
        settings: Stopping rules

    Returns:
        (best iterate, its objective, iterations used, settled) where
        settled is False only when max_iter ran out first

    Raises:
        OptimizationError: If the subgradient or objective turns non-finite
    """
    best = start.copy()
    best_value = objective.value(best)[0]
    step_scale = settings.step_scale or 0.1 * max(float(np.linalg.norm(start)), 1.0)
    current = start.copy()
    since_restart = 0
    window_start = best_value
    restarts = 0

    for iteration in range(1, settings.max_iter + 1):
        grad = objective.subgradient(current)
        if not np.all(np.isfinite(grad)):
            raise OptimizationError("subgradient became non-finite")
        grad_norm = float(np.linalg.norm(grad))
        if grad_norm == 0.0:
            return best, best_value, iteration, True

        since_restart += 1
        current = current - step_scale / math.sqrt(since_restart) * grad / grad_norm
        current = np.clip(current, -radius, radius)

        value = objective.value(current)[0]
        if not math.isfinite(value):
            raise OptimizationError("objective became non-finite")
        if value < best_value:
            best, best_value = current.copy(), value

        if iteration % settings.patience:
            continue
        progressed = window_start - best_value > settings.tol * max(abs(window_start), _TINY)
        window_start = best_value
        if progressed:
            continue
        if restarts >= settings.max_restarts:
            return best, best_value, iteration, True
        restarts += 1
        step_scale *= 0.5
        current = best.copy()
        since_restart = 0
        logger.debug("subgradient restart %d at iteration %d, objective %.6g", restarts, iteration, best_value)

    return best, best_value, settings.max_iter, False


def optimize_coefficients(
    problem: TradeoffProblem,
    settings: SolverSettings | None = None,
    diagonal: DiagonalModel = DiagonalModel.REALIZED_DEGREE,
) -> OptResult:
    """Minimize the bias-variance trade-off objective of ``problem``.

    Args:
        problem: Target, shift, connection matrix, mu and rho
        settings: Subgradient stopping rules (mu > 0 only)
        diagonal: Diagonal model of the expected shift

    Returns:
        OptResult whose objective never exceeds the warm start's

    Raises:
        OptimizationError: If mu is negative or the objective turns non-finite
    """
    settings = settings or SolverSettings()
    if problem.mu < 0 or not math.isfinite(problem.mu):
        raise OptimizationError(f"mu must be a finite non-negative number, got {problem.mu}")
    rho = problem.rho if problem.rho is not None else spectral_bound(problem.s)
    objective = _Objective(problem, rho, diagonal)

    def result(values: np.ndarray, iterations: int, converged: bool, warm_value: float) -> OptResult:
        total, bias_sq, variance = objective.value(values)
        if not math.isfinite(total):
            raise OptimizationError("objective is not finite")
        coefficients = CoefficientSet(problem.order, problem.target.mode, values)
        return OptResult(
            coefficients=coefficients,
            bias_fro_sq=bias_sq,
            variance_bound=variance,
            objective=total,
            iterations=iterations,
            converged=converged,
            warm_objective=warm_value,
            rho=rho,
        )

    if problem.q.is_deterministic():
        target_value = objective.value(problem.target.values)[0]
        return result(np.array(problem.target.values), 0, True, target_value)

    warm = warm_start(problem).values
    warm_value = objective.value(warm)[0]
    if not math.isfinite(warm_value):
        raise OptimizationError("objective at the warm start is not finite")

    fitted = least_squares_coefficients(problem, diagonal=diagonal).values
    candidates = [(objective.value(fitted)[0], fitted), (warm_value, warm)]
    iterations, converged = 0, True

    if problem.mu > 0:
        radius = _box_radius(objective, warm_value)
        start = np.clip(min(candidates, key=lambda c: c[0])[1], -radius, radius)
        best, best_value, iterations, converged = _subgradient_descent(objective, start, radius, settings)
        candidates.append((best_value, best))
        if not converged:
            logger.warning(
                "subgradient reached %d iterations without settling; returning best iterate",
                settings.max_iter,
            )

    value, values = min(candidates, key=lambda c: c[0])
    logger.info(
        "optimized %s coefficients (L=%d, mu=%g): objective %.6g, warm start %.6g",
        problem.target.mode.value, problem.order, problem.mu, value, warm_value,
    )
    return result(values, iterations, converged, warm_value)
