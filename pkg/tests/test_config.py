"""Unit tests for configuration loading and validation."""

import pytest
import yaml

from wsn_graph_filtering.config import (
    ExperimentConfig,
    dump_config,
    load_config,
    parse_config,
    resolve_broadcast_range,
    with_overrides,
)
from wsn_graph_filtering.exceptions import ConfigValidationError
from wsn_graph_filtering.models import CoefficientMode, SchedulerKind, ShiftKind


class TestParseConfig:
    """Tests for parse_config."""

    def test_defaults(self):
        """Test an empty mapping yields the documented defaults."""
        config = parse_config({})
        assert config.topology.n == 100
        assert config.topology.side_len_m == 150.0
        assert config.topology.r_broadcast_m == 70.0
        assert config.radio.nu == 2.5
        assert config.radio.packet_bits == 176
        assert config.shift.kind is ShiftKind.NORMALIZED_SHIFTED
        assert config.filter.mode is CoefficientMode.NODE_VARIANT
        assert config.filter.order == 5
        assert config.optimizer.mu == 0.001
        assert config.optimizer.tol == 1e-6
        assert config.optimizer.patience == 500
        assert config.optimizer.max_restarts == 12
        assert config.optimizer.to_settings().max_restarts == 12
        assert config.experiment.trials == 1000
        assert config.scheduler.kinds[0] is SchedulerKind.CDSA
        assert parse_config(None) == config

    def test_unknown_key_names_path(self):
        """Test unknown keys are rejected with their dotted path."""
        with pytest.raises(ConfigValidationError) as exc_info:
            parse_config({"radio": {"power": 3}})
        assert "radio.power" in exc_info.value.key_paths

    def test_chi_out_of_range(self):
        """Test chi outside (0, 1) is reported under radio.chi."""
        with pytest.raises(ConfigValidationError) as exc_info:
            parse_config({"radio": {"chi": 1.5}})
        assert exc_info.value.key_paths == ["radio.chi"]
        assert "radio.chi" in str(exc_info.value)

    def test_packet_length_bounded(self):
        """Test packets longer than one kilobyte are reported under radio.packet_bits."""
        with pytest.raises(ConfigValidationError) as exc_info:
            parse_config({"radio": {"packet_bits": 9000}})
        assert exc_info.value.key_paths == ["radio.packet_bits"]
        assert parse_config({"radio": {"packet_bits": 8192}}).radio.packet_bits == 8192

    def test_q_values_range(self):
        """Test sweep probabilities must lie in (0, 1]."""
        with pytest.raises(ConfigValidationError):
            parse_config({"sweep": {"q_values": [0.5, 0.0]}})

    def test_explicit_target_length(self):
        """Test explicit targets need order + 1 values."""
        with pytest.raises(ConfigValidationError):
            parse_config({"filter": {"order": 2, "target": {"kind": "explicit", "values": [1.0, 0.5]}}})

    def test_file_topology_needs_path(self):
        """Test a file topology without positions_file is rejected."""
        with pytest.raises(ConfigValidationError):
            parse_config({"topology": {"kind": "file"}})

    def test_single_trial_rejected(self):
        """Test moment estimation needs at least two trials."""
        with pytest.raises(ConfigValidationError):
            parse_config({"experiment": {"trials": 1}})

    def test_not_a_mapping(self):
        """Test a YAML list is rejected."""
        with pytest.raises(ConfigValidationError):
            parse_config([1, 2])


class TestLoadConfig:
    """Tests for load_config and dump_config."""

    def test_load(self, write_config):
        """Test a YAML file is parsed and defaulted."""
        path = write_config("topology:\n  n: 12\nexperiment:\n  trials: 20\n")
        config = load_config(path)
        assert config.topology.n == 12
        assert config.experiment.trials == 20
        assert config.filter.order == 5

    def test_missing_file(self, temp_dir):
        """Test a missing file raises ConfigValidationError."""
        with pytest.raises(ConfigValidationError, match="not found"):
            load_config(temp_dir / "absent.yaml")

    def test_invalid_yaml(self, write_config):
        """Test malformed YAML raises ConfigValidationError."""
        with pytest.raises(ConfigValidationError, match="Invalid YAML"):
            load_config(write_config("topology: [unclosed\n"))

    def test_empty_file(self, write_config):
        """Test an empty file gives the defaults."""
        assert load_config(write_config("")) == ExperimentConfig()

    def test_echo_reloads_identically(self, write_config):
        """Test the dumped configuration parses back to the same values."""
        config = parse_config({"topology": {"n": 30}, "sweep": {"q_values": [0.25, 0.75]}})
        echoed = dump_config(config)
        assert parse_config(yaml.safe_load(echoed)) == config
        assert load_config(write_config(echoed, "echo.yaml")) == config


class TestOverrides:
    """Tests for with_overrides and resolve_broadcast_range."""

    def test_overrides(self):
        """Test seed, output directory and thread overrides."""
        config = with_overrides(ExperimentConfig(), seed=7, out_dir="runs/a", threads=4)
        assert config.experiment.master_seed == 7
        assert config.output.out_dir == "runs/a"
        assert config.experiment.threads == 4

    def test_no_overrides(self):
        """Test absent overrides leave the configuration unchanged."""
        config = parse_config({"experiment": {"master_seed": 3}})
        assert with_overrides(config) == config

    def test_invalid_override(self):
        """Test overrides are validated too."""
        with pytest.raises(ConfigValidationError):
            with_overrides(ExperimentConfig(), threads=0)

    def test_broadcast_range_sources(self):
        """Test the topology, radio and chi sources in order of precedence."""
        assert resolve_broadcast_range(ExperimentConfig()) == (70.0, "topology.r_broadcast_m")
        radio = parse_config({"topology": {"r_broadcast_m": None}, "radio": {"r_broadcast_m": 50.0}})
        assert resolve_broadcast_range(radio) == (50.0, "radio.r_broadcast_m")
        chi = parse_config({"topology": {"r_broadcast_m": None}})
        value, source = resolve_broadcast_range(chi)
        assert source == "radio.chi"
        assert value == pytest.approx(5000.0)
