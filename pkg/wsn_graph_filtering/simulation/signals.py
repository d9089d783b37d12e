"""Input signals for the filtering experiments."""

from __future__ import annotations

import numpy as np

from wsn_graph_filtering.filters.arma import tikhonov_solve
from wsn_graph_filtering.graph.shift import adjacency_matrix, laplacian_from_weights, laplacian_lambda_max
from wsn_graph_filtering.models import Topology


def smoothing_operator(topology: Topology) -> np.ndarray:
    """Positive semidefinite L / lambda_max(L); zero for edgeless graphs."""
    laplacian = laplacian_from_weights(adjacency_matrix(topology))
    lambda_max = laplacian_lambda_max(laplacian)
    if lambda_max <= 0:
        return laplacian
    return laplacian / lambda_max


def smooth_signal(s_smooth: np.ndarray, w_gen: float, rng: np.random.Generator) -> np.ndarray:
    """Graph-smooth field: white noise passed through (I + w_gen S)^-1."""
    white = rng.standard_normal(s_smooth.shape[0])
    return tikhonov_solve(s_smooth, w_gen, white)


def noisy_observation(v: np.ndarray, std: float, rng: np.random.Generator) -> np.ndarray:
    """v plus zero-mean Gaussian noise of standard deviation ``std``."""
    if std < 0:
        raise ValueError(f"noise std must be non-negative, got {std}")
    return v + std * rng.standard_normal(v.shape[0])


def white_input(n: int, rng: np.random.Generator) -> np.ndarray:
    return rng.standard_normal(n)
