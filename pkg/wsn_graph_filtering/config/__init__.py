"""Experiment configuration: schema, YAML loading and overrides."""

from wsn_graph_filtering.config.loader import (
    dump_config,
    load_config,
    parse_config,
    resolve_broadcast_range,
    with_overrides,
)
from wsn_graph_filtering.config.schema import (
    ExperimentConfig,
    ExperimentSection,
    FilterConfig,
    OptimizerConfig,
    OutputConfig,
    RadioConfig,
    SchedulerConfig,
    ShiftConfig,
    SweepConfig,
    TargetConfig,
    TopologyConfig,
)

__all__ = [
    "ExperimentConfig",
    "ExperimentSection",
    "FilterConfig",
    "OptimizerConfig",
    "OutputConfig",
    "RadioConfig",
    "SchedulerConfig",
    "ShiftConfig",
    "SweepConfig",
    "TargetConfig",
    "TopologyConfig",
    "dump_config",
    "load_config",
    "parse_config",
    "resolve_broadcast_range",
    "with_overrides",
]
