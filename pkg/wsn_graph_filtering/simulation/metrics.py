"""Empirical error statistics of time-varying filter outputs."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from wsn_graph_filtering.exceptions import InsufficientSamplesError
from wsn_graph_filtering.models import MetricsReport

PER_SEED_KEYS = (
    "nse",
    "mean_error",
    "mean_signed_error",
    "emp_variance",
    "emp_second_moment",
    "variance_bound_value",
)


def estimate_empirical_moments(samples: np.ndarray | Sequence[np.ndarray]) -> tuple[np.ndarray, float]:
    """Sample mean and per-node covariance trace of graph-signal samples.

    Args:
        samples: (trials, N) array or sequence of length-N signals

    Returns:
        (mean, tr(Cov) / N) with the unbiased (trials - 1) estimator

    Raises:
        InsufficientSamplesError: With fewer than two samples
    """
    stack = np.asarray(samples, dtype=float)
    if stack.ndim != 2 or stack.shape[0] < 2:
        raise InsufficientSamplesError(
            f"moment estimation needs at least 2 samples, got {stack.shape[0] if stack.ndim else 0}"
        )
    mean = stack.mean(axis=0)
    centered = stack - mean
    trace = float(np.sum(centered**2) / (stack.shape[0] - 1))
    return mean, trace / stack.shape[1]


def normalized_squared_error(reference: np.ndarray, estimate: np.ndarray) -> float:
    """||reference - estimate||^2 / ||reference||^2 (inf when reference is zero and they differ)."""
    reference = np.asarray(reference, dtype=float)
    gap = float(np.sum((reference - np.asarray(estimate, dtype=float)) ** 2))
    scale = float(np.sum(reference**2))
    if scale == 0.0:
        return 0.0 if gap == 0.0 else float("inf")
    return gap / scale


def summarize(outputs: np.ndarray, reference: np.ndarray) -> dict[str, float]:
    """Error metrics of trial outputs (trials, N) against the deterministic output."""
    outputs = np.asarray(outputs, dtype=float)
    errors = outputs - reference
    mean, emp_variance = estimate_empirical_moments(outputs)
    return {
        "nse": normalized_squared_error(reference, mean),
        "mean_error": float(np.abs(errors).mean()),
        "mean_signed_error": float(errors.mean()),
        "emp_variance": emp_variance,
        "emp_second_moment": float(np.sum(errors**2) / errors.size),
    }


def aggregate(
    label: str,
    per_seed: list[dict],
    trials: int,
    t_slots: float | None = None,
) -> MetricsReport:
    """Average per-seed rows into one report; rho violations are summed."""
    averaged = {key: float(np.mean([row[key] for row in per_seed])) for key in PER_SEED_KEYS}
    return MetricsReport(
        label=label,
        t_slots=t_slots,
        rho_violations=int(sum(row.get("rho_violations", 0) for row in per_seed)),
        trials=trials,
        seeds=[row["seed"] for row in per_seed],
        per_seed=per_seed,
        **averaged,
    )
