"""Loading, echoing and overriding experiment configurations."""

from __future__ import annotations

from pathlib import Path

import yaml
from pydantic import ValidationError

from wsn_graph_filtering.config.schema import ExperimentConfig
from wsn_graph_filtering.exceptions import ConfigValidationError
from wsn_graph_filtering.radio.phy import max_range


def parse_config(data: dict | None) -> ExperimentConfig:
    """Validate a configuration mapping, filling every default.

    Raises:
        ConfigValidationError: On unknown keys or invalid values; the
            error lists each offending dotted key path
    """
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigValidationError(
            f"Configuration must be a YAML dictionary, got {type(data).__name__}"
        )
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        key_paths = []
        problems = []
        for error in e.errors():
            path = ".".join(str(part) for part in error["loc"]) or "<root>"
            key_paths.append(path)
            problems.append(f"{path}: {error['msg']}")
        raise ConfigValidationError("Invalid configuration: " + "; ".join(problems), key_paths) from e


def load_config(path: Path) -> ExperimentConfig:
    """Read and validate a YAML configuration file.

    Raises:
        ConfigValidationError: If the file is missing, is not valid YAML,
            or fails validation
    """
    path = Path(path)
    if not path.exists():
        raise ConfigValidationError(f"Configuration file not found: {path}")
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as e:
        raise ConfigValidationError(f"Invalid YAML in {path}: {e}") from e
    return parse_config(data)


def dump_config(config: ExperimentConfig) -> str:
    """Render the fully defaulted configuration as YAML."""
    return yaml.safe_dump(config.model_dump(mode="json"), sort_keys=True)


def with_overrides(
    config: ExperimentConfig,
    seed: int | None = None,
    out_dir: str | None = None,
    threads: int | None = None,
) -> ExperimentConfig:
    """Apply command-line overrides, re-validating the result."""
    data = config.model_dump(mode="json")
    if seed is not None:
        data["experiment"]["master_seed"] = seed
    if out_dir is not None:
        data["output"]["out_dir"] = str(out_dir)
    if threads is not None:
        data["experiment"]["threads"] = threads
    return parse_config(data)


def resolve_broadcast_range(config: ExperimentConfig) -> tuple[float, str]:
    """Broadcast range in force and where it came from.

    Returns:
        (R_B in meters, source) with source one of "topology.r_broadcast_m",
        "radio.r_broadcast_m" or "radio.chi"
    """
    if config.topology.r_broadcast_m is not None:
        return config.topology.r_broadcast_m, "topology.r_broadcast_m"
    if config.radio.r_broadcast_m is not None:
        return config.radio.r_broadcast_m, "radio.r_broadcast_m"
    return config.radio.chi * max_range(config.radio.to_params()), "radio.chi"
