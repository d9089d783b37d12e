"""End-to-end experiments: accuracy sweeps, scheduler comparison, denoising and delay.

Every experiment runs ``experiment.replicas`` independent deployments. For
replica k all randomness comes from ``SeededStreams(master_seed, k)``:
the deployment from the "topology" stream, the input from "signal", the
observation noise from "noise", scheduler draws from "schedule" and trial t
from "trials"/t. Two experiments that share a configuration therefore see
the same deployment, input and graph realizations.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from wsn_graph_filtering.config.loader import resolve_broadcast_range
from wsn_graph_filtering.config.schema import ExperimentConfig, SchedulerConfig
from wsn_graph_filtering.filters.arma import require_symmetric, tikhonov_solve, tikhonov_target
from wsn_graph_filtering.filters.fir import apply_fir, apply_timevarying
from wsn_graph_filtering.graph.shift import build_shift, sample_realization, uniform_connection
from wsn_graph_filtering.graph.topology import (
    check_connectivity,
    generate_topology,
    grid_topology,
    topology_from_positions,
)
from wsn_graph_filtering.models import (
    CoefficientMode,
    CoefficientSet,
    ConnectionMatrix,
    MetricsReport,
    OptResult,
    ProtocolTrace,
    RadioParams,
    Schedule,
    SchedulerKind,
    ShiftOperator,
    Topology,
    TradeoffProblem,
)
from wsn_graph_filtering.observability.events import EventSink
from wsn_graph_filtering.optimize.bias import operator_nse
from wsn_graph_filtering.optimize.solver import optimize_coefficients
from wsn_graph_filtering.optimize.variance import variance_bound
from wsn_graph_filtering.scheduling.baselines import baseline_schedule
from wsn_graph_filtering.scheduling.cdsa import cdsa_schedule
from wsn_graph_filtering.serialization.codecs import load_topology
from wsn_graph_filtering.simulation.metrics import aggregate, summarize
from wsn_graph_filtering.simulation.rng import SeededStreams
from wsn_graph_filtering.simulation.signals import (
    noisy_observation,
    smooth_signal,
    smoothing_operator,
    white_input,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Deployment:
    """One replica's deployment and the objects derived from it."""
    replica: int
    seed: int
    streams: SeededStreams
    topology: Topology
    shift: ShiftOperator
    target: CoefficientSet


@dataclass(frozen=True, eq=False)
class Evaluation:
    """Outcome of filtering over one connection matrix."""
    row: dict
    optimized: OptResult
    mean_output: np.ndarray
    reference: np.ndarray


def build_topology(config: ExperimentConfig, streams: SeededStreams) -> tuple[Topology, int]:
    """Deployment described by ``config.topology``.

    Returns:
        (topology, seed) where seed drew the random positions (0 for
        grid and file deployments)
    """
    section = config.topology
    r_broadcast, source = resolve_broadcast_range(config)
    seed = 0
    if section.kind == "grid":
        topology = grid_topology(section.rows, section.cols, section.spacing_m, r_broadcast)
    elif section.kind == "file":
        loaded = load_topology(section.positions_file)
        topology = topology_from_positions(loaded.positions, loaded.side_len, loaded.r_broadcast)
    else:
        seed = section.seed if section.seed is not None else streams.integer_seed("topology")
        topology = generate_topology(section.n, section.side_len_m, r_broadcast, seed)
    logger.debug("R_B = %.3f m from %s", topology.r_broadcast, source)
    if not check_connectivity(topology):
        logger.warning("deployment with seed %d is not connected", seed)
    return topology, seed


def build_target(config: ExperimentConfig, n: int) -> CoefficientSet:
    """Target coefficients h in the configured coefficient mode."""
    section = config.filter
    if section.target.kind == "explicit":
        target = CoefficientSet.invariant(section.target.values)
        if section.mode is CoefficientMode.NODE_VARIANT:
            target = target.as_node_variant(n)
        return target
    return tikhonov_target(section.order, section.target.w, n, section.mode)


def deploy(config: ExperimentConfig, replica: int) -> Deployment:
    streams = SeededStreams(config.experiment.master_seed, replica)
    topology, seed = build_topology(config, streams)
    return Deployment(
        replica=replica,
        seed=seed,
        streams=streams,
        topology=topology,
        shift=build_shift(topology, config.shift.kind),
        target=build_target(config, topology.n),
    )


def scheduler_seed(streams: SeededStreams, kind: SchedulerKind) -> int:
    return streams.integer_seed("schedule", list(SchedulerKind).index(kind))


def run_scheduler(
    kind: SchedulerKind,
    topology: Topology,
    params: RadioParams,
    section: SchedulerConfig,
    seed: int,
    sink: EventSink | None = None,
) -> tuple[Schedule, ProtocolTrace]:
    """Run one scheduler; CDSA's node-count estimate defaults to the true N."""
    if kind is SchedulerKind.CDSA:
        n_estimate = section.n_estimate if section.n_estimate is not None else topology.n
        return cdsa_schedule(topology, params, n_estimate, seed, section.truncate_surplus, sink)
    return baseline_schedule(kind, topology, params, seed, section.rlba_probability, sink)


def evaluate_connection(
    deployment: Deployment,
    connection: ConnectionMatrix,
    x: np.ndarray,
    config: ExperimentConfig,
) -> Evaluation:
    """Optimize coefficients for ``connection`` and filter ``x`` over random realizations.

    The reference output is the target filter on the deterministic graph.
    Trial t draws its L realizations from its own stream, so outputs do
    not depend on the thread count.
    """
    shift, target = deployment.shift, deployment.target
    problem = TradeoffProblem(
        target=target,
        s=shift,
        q=connection,
        mu=config.optimizer.mu,
        rho=config.optimizer.rho,
    )
    optimized = optimize_coefficients(problem, config.optimizer.to_settings(), config.shift.diagonal)
    coefficients, rho = optimized.coefficients, optimized.rho
    reference = apply_fir(shift.matrix, target, x)
    section = config.experiment

    def trial(index: int) -> tuple[np.ndarray, int]:
        rng = deployment.streams.generator("trials", index)
        realizations = [sample_realization(shift, connection, rng) for _ in range(target.order)]
        violations = 0
        if index < section.rho_check_trials:
            violations = sum(
                int(np.linalg.norm(r.shift_t, 2) > rho) for r in realizations
            )
        return apply_timevarying(realizations, coefficients, x), violations

    if section.threads > 1:
        with ThreadPoolExecutor(max_workers=section.threads) as pool:
            results = list(pool.map(trial, range(section.trials)))
    else:
        results = [trial(index) for index in range(section.trials)]

    outputs = np.stack([output for output, _ in results])
    rho_violations = sum(violations for _, violations in results)
    if rho_violations:
        logger.warning("%d realizations exceeded rho = %.6g", rho_violations, rho)

    row = summarize(outputs, reference)
    row["variance_bound_value"] = variance_bound(coefficients, rho, shift.n, float(x @ x))[1]
    row["operator_nse"] = operator_nse(coefficients, target, shift, connection, config.shift.diagonal)
    row["rho_violations"] = rho_violations
    row["objective"] = optimized.objective
    row["seed"] = deployment.seed
    row["replica"] = deployment.replica
    return Evaluation(row=row, optimized=optimized, mean_output=outputs.mean(axis=0), reference=reference)


def sweep_input(deployment: Deployment) -> np.ndarray:
    """Input signal of the sweep, comparison and single-filter runs."""
    return white_input(deployment.topology.n, deployment.streams.generator("signal"))


def run_accuracy_sweep(config: ExperimentConfig) -> list[MetricsReport]:
    """Filtering accuracy for each uniform link probability q; no radio layer."""
    rows: dict[float, list[dict]] = {q: [] for q in config.sweep.q_values}
    for replica in range(config.experiment.replicas):
        deployment = deploy(config, replica)
        x = sweep_input(deployment)
        for q in config.sweep.q_values:
            evaluation = evaluate_connection(deployment, uniform_connection(deployment.shift, q), x, config)
            rows[q].append({**evaluation.row, "q": q})
            logger.info("q=%g replica %d: mean error %.3g", q, replica, evaluation.row["mean_error"])
    return [aggregate(f"q={q:g}", rows[q], config.experiment.trials) for q in config.sweep.q_values]


def run_filter(
    config: ExperimentConfig,
    connection: ConnectionMatrix,
    label: str,
    t_slots: float | None = None,
) -> MetricsReport:
    """Filtering accuracy of replica 0 over a given connection matrix (e.g. a saved schedule)."""
    deployment = deploy(config, 0)
    evaluation = evaluate_connection(deployment, connection, sweep_input(deployment), config)
    row = {**evaluation.row, "t_slots": t_slots}
    return aggregate(label, [row], config.experiment.trials, t_slots)


def run_scheduler_comparison(
    config: ExperimentConfig,
    sink: EventSink | None = None,
) -> list[MetricsReport]:
    """Filtering accuracy and slot count of every configured scheduler."""
    params = config.radio.to_params()
    kinds = config.scheduler.kinds
    rows: dict[SchedulerKind, list[dict]] = {kind: [] for kind in kinds}
    for replica in range(config.experiment.replicas):
        deployment = deploy(config, replica)
        x = sweep_input(deployment)
        for kind in kinds:
            seed = scheduler_seed(deployment.streams, kind)
            schedule, _ = run_scheduler(kind, deployment.topology, params, config.scheduler, seed, sink)
            evaluation = evaluate_connection(deployment, schedule.q_matrix, x, config)
            rows[kind].append({**evaluation.row, "t_slots": schedule.n_slots})
    return [
        aggregate(
            kind.value,
            rows[kind],
            config.experiment.trials,
            float(np.mean([row["t_slots"] for row in rows[kind]])),
        )
        for kind in kinds
    ]


def run_denoising(
    config: ExperimentConfig,
    sink: EventSink | None = None,
) -> tuple[dict[str, np.ndarray], list[MetricsReport]]:
    """Denoise a smooth field observed in Gaussian noise through each scheduler's network.

    Returns:
        (signals, reports): signals of replica 0 keyed "clean", "noisy",
        "perfect" (target filter on the deterministic graph), "tikhonov"
        (closed form, truncation targets only) and one average filtered
        output per scheduler; one report per scheduler whose per-seed rows
        carry the l2 distance to the perfect output

    Raises:
        AsymmetricShiftError: If a truncation target meets a non-symmetric shift
    """
    params = config.radio.to_params()
    kinds = config.scheduler.kinds
    rows: dict[SchedulerKind, list[dict]] = {kind: [] for kind in kinds}
    signals: dict[str, np.ndarray] = {}

    for replica in range(config.experiment.replicas):
        deployment = deploy(config, replica)
        if config.filter.target.kind == "arma_truncation":
            require_symmetric(deployment.shift.matrix)
        streams = deployment.streams
        clean = smooth_signal(
            smoothing_operator(deployment.topology),
            config.experiment.smooth_w_gen,
            streams.generator("signal"),
        )
        noisy = noisy_observation(clean, config.experiment.noise_std, streams.generator("noise"))
        perfect = apply_fir(deployment.shift.matrix, deployment.target, noisy)
        if replica == 0:
            signals.update(clean=clean, noisy=noisy, perfect=perfect)
            if config.filter.target.kind == "arma_truncation":
                signals["tikhonov"] = tikhonov_solve(
                    deployment.shift.matrix, config.filter.target.w, noisy
                )

        for kind in kinds:
            schedule, _ = run_scheduler(
                kind,
                deployment.topology,
                params,
                config.scheduler,
                scheduler_seed(streams, kind),
                sink,
            )
            evaluation = evaluate_connection(deployment, schedule.q_matrix, noisy, config)
            distance = float(np.linalg.norm(evaluation.mean_output - perfect))
            rows[kind].append(
                {
                    **evaluation.row,
                    "t_slots": schedule.n_slots,
                    "distance_to_perfect": distance,
                    "distance_to_clean": float(np.linalg.norm(evaluation.mean_output - clean)),
                }
            )
            if replica == 0:
                signals[kind.value] = evaluation.mean_output

    reports = [
        aggregate(
            kind.value,
            rows[kind],
            config.experiment.trials,
            float(np.mean([row["t_slots"] for row in rows[kind]])),
        )
        for kind in kinds
    ]
    return signals, reports


def run_delay_comparison(config: ExperimentConfig, sink: EventSink | None = None) -> list[dict]:
    """Slots per filtering round, set-up slots and control messages of each scheduler per replica."""
    params = config.radio.to_params()
    rows = []
    for replica in range(config.experiment.replicas):
        streams = SeededStreams(config.experiment.master_seed, replica)
        topology, seed = build_topology(config, streams)
        for kind in config.scheduler.kinds:
            schedule, trace = run_scheduler(
                kind, topology, params, config.scheduler, scheduler_seed(streams, kind), sink
            )
            rows.append(
                {
                    "kind": kind.value,
                    "replica": replica,
                    "seed": seed,
                    "n": topology.n,
                    "t_slots": schedule.n_slots,
                    "setup_slots": trace.setup_slots,
                    "control_messages": trace.control_messages,
                }
            )
            logger.info("%s replica %d: T_s = %d", kind.value, replica, schedule.n_slots)
    return rows
