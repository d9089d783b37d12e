"""Monte Carlo experiments over random graph realizations."""

from wsn_graph_filtering.simulation.experiments import (
    Deployment,
    Evaluation,
    build_target,
    build_topology,
    deploy,
    evaluate_connection,
    run_accuracy_sweep,
    run_delay_comparison,
    run_denoising,
    run_filter,
    run_scheduler,
    run_scheduler_comparison,
    scheduler_seed,
    sweep_input,
)
from wsn_graph_filtering.simulation.metrics import (
    aggregate,
    estimate_empirical_moments,
    normalized_squared_error,
    summarize,
)
from wsn_graph_filtering.simulation.rng import STREAMS, SeededStreams
from wsn_graph_filtering.simulation.signals import (
    noisy_observation,
    smooth_signal,
    smoothing_operator,
    white_input,
)

__all__ = [
    "STREAMS",
    "Deployment",
    "Evaluation",
    "SeededStreams",
    "aggregate",
    "build_target",
    "build_topology",
    "deploy",
    "estimate_empirical_moments",
    "evaluate_connection",
    "noisy_observation",
    "normalized_squared_error",
    "run_accuracy_sweep",
    "run_delay_comparison",
    "run_denoising",
    "run_filter",
    "run_scheduler",
    "run_scheduler_comparison",
    "scheduler_seed",
    "smooth_signal",
    "smoothing_operator",
    "summarize",
    "sweep_input",
    "white_input",
]
