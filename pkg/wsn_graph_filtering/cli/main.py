"""Command-line interface for distributed graph filtering experiments.

Every subcommand reads one YAML configuration (all keys optional), writes
its results into the output directory together with the fully defaulted
configuration echo ``config.yaml`` and a ``manifest.json`` listing every
emitted file with its SHA-256 digest.

Commands:
    topology: Generate or load a deployment and save it as CSV
    schedule: Allocate broadcast slots with one scheduler
    optimize: Optimize filter coefficients for a connection matrix
    filter: Run time-varying filtering trials over a connection matrix
    sweep: Filtering accuracy over uniform link probabilities
    compare: Filtering accuracy and slot count of every scheduler
    denoise: Denoise a smooth field through each scheduler's network
    delay: Slots, set-up slots and control messages per scheduler

Example:
    $ wsn-gf topology --config experiment.yaml --seed 7
    $ wsn-gf schedule --config experiment.yaml --scheduler cdsa --out-dir run1
    $ wsn-gf filter --config experiment.yaml --schedule-dir run1 --out-dir run1/filter
"""

import argparse
import json
import sys
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path
from typing import NoReturn

import numpy as np

from wsn_graph_filtering.config import (
    ExperimentConfig,
    dump_config,
    load_config,
    parse_config,
    resolve_broadcast_range,
    with_overrides,
)
from wsn_graph_filtering.exceptions import GraphFilteringError
from wsn_graph_filtering.graph.shift import uniform_connection
from wsn_graph_filtering.graph.topology import average_degree, check_connectivity
from wsn_graph_filtering.models import RunManifest, SchedulerKind, ShiftOperator, TradeoffProblem
from wsn_graph_filtering.observability import (
    EventSink,
    JSONLEventSink,
    StdoutEventSink,
    configure_logging,
)
from wsn_graph_filtering.optimize.solver import optimize_coefficients
from wsn_graph_filtering.radio.phy import chi_connectivity_bound
from wsn_graph_filtering.scheduling.verify import verify_schedule
from wsn_graph_filtering.serialization import (
    load_connection,
    read_json,
    save_coefficients,
    save_schedule,
    save_signals,
    save_topology,
    sha256_file,
    write_json,
    write_metrics_csv,
    write_table,
)
from wsn_graph_filtering.simulation import (
    build_topology,
    deploy,
    run_accuracy_sweep,
    run_delay_comparison,
    run_denoising,
    run_filter,
    run_scheduler,
    run_scheduler_comparison,
    scheduler_seed,
)
from wsn_graph_filtering.simulation.rng import SeededStreams

VERSIONED_PACKAGES = ("wsn-graph-filtering", "numpy", "scipy", "networkx", "pydantic", "PyYAML")


def create_parser() -> argparse.ArgumentParser:
    """Create the argument parser for the CLI.

    Returns:
        Configured ArgumentParser instance
    """
    parser = argparse.ArgumentParser(
        prog="wsn-gf",
        description="Distributed graph filtering over random asymmetric sensor networks",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="YAML experiment configuration")
    common.add_argument("--seed", type=int, help="Override experiment.master_seed")
    common.add_argument("--out-dir", type=Path, help="Override output.out_dir")
    common.add_argument("--threads", type=int, help="Override experiment.threads")
    common.add_argument(
        "--log-level",
        type=str.upper,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default="WARNING",
        help="Logging level for stderr output (default: WARNING)",
    )
    common.add_argument(
        "--trace",
        help="Write protocol events as JSON lines to this file ('-' for stdout)",
    )

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    subparsers.add_parser(
        "topology",
        parents=[common],
        help="Generate a deployment",
        description="Generate or load a deployment and save it as topology.csv",
    )

    schedule_parser = subparsers.add_parser(
        "schedule",
        parents=[common],
        help="Allocate broadcast slots",
        description="Run one scheduler on the configured deployment and save the schedule",
    )
    schedule_parser.add_argument(
        "--scheduler",
        choices=[kind.value for kind in SchedulerKind],
        default=SchedulerKind.CDSA.value,
        help="Scheduler to run (default: cdsa)",
    )

    for name, help_text in (
        ("optimize", "Optimize filter coefficients"),
        ("filter", "Run time-varying filtering trials"),
    ):
        sub = subparsers.add_parser(
            name,
            parents=[common],
            help=help_text,
            description=f"{help_text} over a saved schedule or a uniform link probability",
        )
        source = sub.add_mutually_exclusive_group(required=True)
        source.add_argument("--schedule-dir", type=Path, help="Directory written by 'schedule'")
        source.add_argument("--q", type=float, help="Uniform link probability in (0, 1]")

    subparsers.add_parser(
        "sweep",
        parents=[common],
        help="Accuracy over uniform link probabilities",
        description="Filtering accuracy for every value of sweep.q_values",
    )
    subparsers.add_parser(
        "compare",
        parents=[common],
        help="Compare schedulers",
        description="Filtering accuracy and slot count of every scheduler in scheduler.kinds",
    )
    subparsers.add_parser(
        "denoise",
        parents=[common],
        help="Denoise a smooth field",
        description="Denoise a noisy smooth field through each scheduler's network",
    )
    subparsers.add_parser(
        "delay",
        parents=[common],
        help="Compare scheduling delay",
        description="Slots per round, set-up slots and control messages of every scheduler",
    )

    return parser


def _prepare(args: argparse.Namespace) -> tuple[ExperimentConfig, Path]:
    configure_logging(args.log_level)
    config = load_config(args.config) if args.config else parse_config({})
    config = with_overrides(config, seed=args.seed, out_dir=args.out_dir, threads=args.threads)
    out_dir = Path(config.output.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    return config, out_dir


def _trace_sink(args: argparse.Namespace) -> EventSink | None:
    if not args.trace:
        return None
    if args.trace == "-":
        return StdoutEventSink()
    path = Path(args.trace)
    # the sink appends; each run starts a fresh trace
    path.unlink(missing_ok=True)
    return JSONLEventSink(path)


def _versions() -> dict:
    versions = {}
    for package in VERSIONED_PACKAGES:
        try:
            versions[package] = version(package)
        except PackageNotFoundError:
            versions[package] = None
    return versions


def _finish(
    command: str,
    args: argparse.Namespace,
    config: ExperimentConfig,
    out_dir: Path,
    files: list[Path],
) -> RunManifest:
    """Write config.yaml and manifest.json next to the results."""
    echo_path = out_dir / "config.yaml"
    echo_path.write_text(dump_config(config), encoding="utf-8")
    emitted = [echo_path, *files]
    if args.trace and args.trace != "-" and Path(args.trace).exists():
        emitted.append(Path(args.trace))
    manifest = RunManifest(
        command=command,
        config_path=str(args.config) if args.config else None,
        config_echo=config.model_dump(mode="json"),
        master_seed=config.experiment.master_seed,
        versions=_versions(),
        out_dir=str(out_dir),
        files=[{"path": str(path), "sha256": sha256_file(path)} for path in emitted],
    )
    write_json(manifest.to_dict(), out_dir / "manifest.json")
    return manifest


def _fail(command: str, error: Exception, prefix: str = "Error") -> None:
    print(f"{prefix}: {error}", file=sys.stderr)
    record = {
        "ok": False,
        "error": type(error).__name__,
        "message": str(error),
        "command": command,
    }
    print(json.dumps(record, sort_keys=True), file=sys.stderr)


def _connection_source(args: argparse.Namespace, n: int, shift: ShiftOperator):
    """Connection matrix, label and slot count selected by --schedule-dir or --q."""
    if args.schedule_dir is not None:
        summary = read_json(args.schedule_dir / "schedule.json")
        connection = load_connection(
            args.schedule_dir / "connection.csv", n, row_equalized=summary["row_equalized"]
        )
        return connection, summary["kind"], float(summary["n_slots"])
    return uniform_connection(shift, args.q), f"q={args.q:g}", None


def _write_reports(reports, out_dir: Path) -> list[Path]:
    csv_path = out_dir / "metrics.csv"
    json_path = out_dir / "metrics.json"
    write_metrics_csv(reports, csv_path)
    write_json([report.to_dict() for report in reports], json_path)
    return [csv_path, json_path]


def cmd_topology(args: argparse.Namespace) -> int:
    """Execute the topology command.

    Args:
        args: Parsed command-line arguments

    Returns:
        Exit code (0 for success, nonzero for error)
    """
    try:
        config, out_dir = _prepare(args)
        streams = SeededStreams(config.experiment.master_seed)
        topology, seed = build_topology(config, streams)
        path = out_dir / "topology.csv"
        save_topology(topology, path)

        _, source = resolve_broadcast_range(config)
        print(f"Nodes: {topology.n}")
        print(f"Broadcast range: {topology.r_broadcast:.3f} m ({source})")
        print(f"Average degree: {average_degree(topology):.2f}")
        print(f"Connected: {'yes' if check_connectivity(topology) else 'no'}")
        if topology.n >= 2:
            chi_min, _ = chi_connectivity_bound(
                config.radio.to_params(), topology.side_len, topology.n
            )
            print(f"Connectivity bound on chi: {chi_min:.4f}")
        print(f"Topology seed: {seed}")

        _finish("topology", args, config, out_dir, [path])
        return 0

    except GraphFilteringError as e:
        _fail("topology", e)
        return 1
    except Exception as e:
        _fail("topology", e, "Unexpected error")
        return 2


def cmd_schedule(args: argparse.Namespace) -> int:
    """Execute the schedule command.

    Args:
        args: Parsed command-line arguments

    Returns:
        Exit code (0 for success, nonzero for error)
    """
    try:
        config, out_dir = _prepare(args)
        kind = SchedulerKind(args.scheduler)
        deployment = deploy(config, 0)
        schedule, trace = run_scheduler(
            kind,
            deployment.topology,
            config.radio.to_params(),
            config.scheduler,
            scheduler_seed(deployment.streams, kind),
            _trace_sink(args),
        )
        files = save_schedule(schedule, out_dir, trace)

        report = verify_schedule(schedule, deployment.topology, config.radio.to_params())
        print(f"Scheduler: {kind.value}")
        print(f"Slots: {schedule.n_slots}")
        print(f"Control messages: {trace.control_messages}")
        if trace.setup_slots:
            print(f"Set-up slots: {trace.setup_slots}")
        if schedule.isolated:
            print(f"Isolated nodes: {schedule.isolated}")
        print(f"SINR violations: {len(report.violations)}")
        print(f"Partition: {'ok' if report.partition_ok else 'broken'}")

        _finish("schedule", args, config, out_dir, files)
        return 0

    except GraphFilteringError as e:
        _fail("schedule", e)
        return 1
    except Exception as e:
        _fail("schedule", e, "Unexpected error")
        return 2


def cmd_optimize(args: argparse.Namespace) -> int:
    """Execute the optimize command.

    Args:
        args: Parsed command-line arguments

    Returns:
        Exit code (0 for success, nonzero for error)
    """
    try:
        config, out_dir = _prepare(args)
        deployment = deploy(config, 0)
        connection, label, _ = _connection_source(args, deployment.topology.n, deployment.shift)
        problem = TradeoffProblem(
            target=deployment.target,
            s=deployment.shift,
            q=connection,
            mu=config.optimizer.mu,
            rho=config.optimizer.rho,
        )
        result = optimize_coefficients(problem, config.optimizer.to_settings(), config.shift.diagonal)

        coefficients_path = out_dir / "coefficients.csv"
        summary_path = out_dir / "optimize.json"
        save_coefficients(result.coefficients, coefficients_path)
        summary = result.to_dict()
        summary.pop("coefficients")
        summary["label"] = label
        write_json(summary, summary_path)

        print(f"Connection: {label}")
        print(f"Objective: {result.objective:.6g} (warm start {result.warm_objective:.6g})")
        print(f"Bias ||B||_F^2: {result.bias_fro_sq:.6g}")
        print(f"Variance bound: {result.variance_bound:.6g}")
        print(f"Iterations: {result.iterations}{'' if result.converged else ' (cap reached)'}")

        _finish("optimize", args, config, out_dir, [coefficients_path, summary_path])
        return 0

    except GraphFilteringError as e:
        _fail("optimize", e)
        return 1
    except Exception as e:
        _fail("optimize", e, "Unexpected error")
        return 2


def cmd_filter(args: argparse.Namespace) -> int:
    """Execute the filter command.

    Args:
        args: Parsed command-line arguments

    Returns:
        Exit code (0 for success, nonzero for error)
    """
    try:
        config, out_dir = _prepare(args)
        deployment = deploy(config, 0)
        connection, label, t_slots = _connection_source(args, deployment.topology.n, deployment.shift)
        report = run_filter(config, connection, label, t_slots)
        files = _write_reports([report], out_dir)

        print(f"{report.label}: NSE {report.nse:.4g}, mean error {report.mean_error:.4g}, "
              f"variance {report.emp_variance:.4g} (bound {report.variance_bound_value:.4g})")

        _finish("filter", args, config, out_dir, files)
        return 0

    except GraphFilteringError as e:
        _fail("filter", e)
        return 1
    except Exception as e:
        _fail("filter", e, "Unexpected error")
        return 2


def _print_reports(reports) -> None:
    for report in reports:
        line = (
            f"{report.label}: NSE {report.nse:.4g}, mean error {report.mean_error:.4g}, "
            f"variance {report.emp_variance:.4g}"
        )
        if report.t_slots is not None:
            line += f", T_s {report.t_slots:g}"
        print(line)


def cmd_sweep(args: argparse.Namespace) -> int:
    """Execute the sweep command.

    Args:
        args: Parsed command-line arguments

    Returns:
        Exit code (0 for success, nonzero for error)
    """
    try:
        config, out_dir = _prepare(args)
        reports = run_accuracy_sweep(config)
        files = _write_reports(reports, out_dir)
        _print_reports(reports)
        _finish("sweep", args, config, out_dir, files)
        return 0

    except GraphFilteringError as e:
        _fail("sweep", e)
        return 1
    except Exception as e:
        _fail("sweep", e, "Unexpected error")
        return 2


def cmd_compare(args: argparse.Namespace) -> int:
    """Execute the compare command.

    Args:
        args: Parsed command-line arguments

    Returns:
        Exit code (0 for success, nonzero for error)
    """
    try:
        config, out_dir = _prepare(args)
        reports = run_scheduler_comparison(config, _trace_sink(args))
        files = _write_reports(reports, out_dir)
        _print_reports(reports)
        _finish("compare", args, config, out_dir, files)
        return 0

    except GraphFilteringError as e:
        _fail("compare", e)
        return 1
    except Exception as e:
        _fail("compare", e, "Unexpected error")
        return 2


def cmd_denoise(args: argparse.Namespace) -> int:
    """Execute the denoise command.

    Args:
        args: Parsed command-line arguments

    Returns:
        Exit code (0 for success, nonzero for error)
    """
    try:
        config, out_dir = _prepare(args)
        signals, reports = run_denoising(config, _trace_sink(args))
        signals_path = out_dir / "signals.csv"
        save_signals(signals, signals_path)
        files = [signals_path, *_write_reports(reports, out_dir)]

        perfect = signals["perfect"]
        for report in reports:
            distance = float(np.linalg.norm(signals[report.label] - perfect))
            print(f"{report.label}: distance to perfect-MAC output {distance:.4g}, T_s {report.t_slots:g}")

        _finish("denoise", args, config, out_dir, files)
        return 0

    except GraphFilteringError as e:
        _fail("denoise", e)
        return 1
    except Exception as e:
        _fail("denoise", e, "Unexpected error")
        return 2


def cmd_delay(args: argparse.Namespace) -> int:
    """Execute the delay command.

    Args:
        args: Parsed command-line arguments

    Returns:
        Exit code (0 for success, nonzero for error)
    """
    try:
        config, out_dir = _prepare(args)
        rows = run_delay_comparison(config, _trace_sink(args))
        path = out_dir / "delay.csv"
        columns = ["kind", "replica", "seed", "n", "t_slots", "setup_slots", "control_messages"]
        write_table(rows, columns, path)

        for kind in config.scheduler.kinds:
            slots = [row["t_slots"] for row in rows if row["kind"] == kind.value]
            print(f"{kind.value}: median T_s {float(np.median(slots)):g} over {len(slots)} replica(s)")

        _finish("delay", args, config, out_dir, [path])
        return 0

    except GraphFilteringError as e:
        _fail("delay", e)
        return 1
    except Exception as e:
        _fail("delay", e, "Unexpected error")
        return 2


COMMANDS = {
    "topology": cmd_topology,
    "schedule": cmd_schedule,
    "optimize": cmd_optimize,
    "filter": cmd_filter,
    "sweep": cmd_sweep,
    "compare": cmd_compare,
    "denoise": cmd_denoise,
    "delay": cmd_delay,
}


def main() -> NoReturn:
    """Main entry point for the CLI.

    This function is called when the wsn-gf command is executed. It parses
    command-line arguments and dispatches to the matching command handler.
    """
    parser = create_parser()
    args = parser.parse_args()

    handler = COMMANDS.get(args.command)
    if handler is None:
        parser.print_help()
        exit_code = 1
    else:
        exit_code = handler(args)

    sys.exit(exit_code)


if __name__ == "__main__":
    main()
