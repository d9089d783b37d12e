"""Bias, variance and coefficient optimization for random-graph filters."""

from wsn_graph_filtering.optimize.bias import (
    bias_matrix,
    operator_nse,
    shift_powers,
    unbiased_scaling,
)
from wsn_graph_filtering.optimize.solver import (
    SolverSettings,
    least_squares_coefficients,
    optimize_coefficients,
    warm_start,
)
from wsn_graph_filtering.optimize.variance import lag_weights, spectral_bound, variance_bound

__all__ = [
    "SolverSettings",
    "bias_matrix",
    "lag_weights",
    "least_squares_coefficients",
    "operator_nse",
    "optimize_coefficients",
    "shift_powers",
    "spectral_bound",
    "unbiased_scaling",
    "variance_bound",
    "warm_start",
]
