"""Distributed graph filtering over random asymmetric wireless sensor networks.

The library designs graph filters that run over the random, asymmetric
links of a wireless sensor network: coefficients trading bias against
variance for a given link-activation matrix, a slot-allocation protocol
(CDSA) that bounds interference and equalizes per-transmitter delivery
probabilities, contention and coloring baselines, and Monte Carlo
experiments tying the two together.
"""

from wsn_graph_filtering.exceptions import (
    AsymmetricShiftError,
    ConfigValidationError,
    DimensionMismatchError,
    GraphFilteringError,
    InfeasibleBroadcastRangeError,
    InsufficientSamplesError,
    ModeMismatchError,
    NumericalError,
    OptimizationError,
    RadioModelError,
    RealizationCountError,
    ScheduleError,
    SpectralBoundError,
    SupportMismatchError,
    TopologyError,
)

from wsn_graph_filtering.models import (
    CoefficientMode,
    CoefficientSet,
    ConnectionMatrix,
    DiagonalModel,
    EventRecord,
    MetricsReport,
    OptResult,
    ProtocolTrace,
    RadioParams,
    Ranges,
    Realization,
    RunManifest,
    Schedule,
    SchedulerKind,
    ShiftKind,
    ShiftOperator,
    Topology,
    TradeoffProblem,
)

from wsn_graph_filtering.graph import (
    build_shift,
    expected_shift,
    generate_topology,
    grid_topology,
    sample_realization,
    uniform_connection,
)
from wsn_graph_filtering.filters import apply_fir, apply_timevarying, run_arma1, tikhonov_solve
from wsn_graph_filtering.optimize import bias_matrix, optimize_coefficients, variance_bound
from wsn_graph_filtering.radio import link_quality, ranges
from wsn_graph_filtering.scheduling import baseline_schedule, cdsa_schedule, verify_schedule
from wsn_graph_filtering.observability import EventSink, JSONLEventSink, StdoutEventSink
from wsn_graph_filtering.config import ExperimentConfig, load_config, parse_config
from wsn_graph_filtering.simulation import (
    estimate_empirical_moments,
    run_accuracy_sweep,
    run_delay_comparison,
    run_denoising,
    run_scheduler_comparison,
)

__version__ = "0.1.0"

__all__ = [
    # Exceptions
    "GraphFilteringError",
    "TopologyError",
    "DimensionMismatchError",
    "RealizationCountError",
    "ModeMismatchError",
    "SupportMismatchError",
    "NumericalError",
    "SpectralBoundError",
    "AsymmetricShiftError",
    "OptimizationError",
    "RadioModelError",
    "InfeasibleBroadcastRangeError",
    "ScheduleError",
    "ConfigValidationError",
    "InsufficientSamplesError",
    # Models
    "CoefficientMode",
    "CoefficientSet",
    "ConnectionMatrix",
    "DiagonalModel",
    "EventRecord",
    "MetricsReport",
    "OptResult",
    "ProtocolTrace",
    "RadioParams",
    "Ranges",
    "Realization",
    "RunManifest",
    "Schedule",
    "SchedulerKind",
    "ShiftKind",
    "ShiftOperator",
    "Topology",
    "TradeoffProblem",
    # Graphs
    "build_shift",
    "expected_shift",
    "generate_topology",
    "grid_topology",
    "sample_realization",
    "uniform_connection",
    # Filters
    "apply_fir",
    "apply_timevarying",
    "run_arma1",
    "tikhonov_solve",
    # Coefficient design
    "bias_matrix",
    "optimize_coefficients",
    "variance_bound",
    # Radio and scheduling
    "link_quality",
    "ranges",
    "baseline_schedule",
    "cdsa_schedule",
    "verify_schedule",
    # Observability
    "EventSink",
    "JSONLEventSink",
    "StdoutEventSink",
    # Configuration
    "ExperimentConfig",
    "load_config",
    "parse_config",
    # Experiments
    "estimate_empirical_moments",
    "run_accuracy_sweep",
    "run_delay_comparison",
    "run_denoising",
    "run_scheduler_comparison",
]
