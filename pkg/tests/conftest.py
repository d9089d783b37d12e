"""Pytest configuration and shared fixtures."""

import tempfile
from pathlib import Path
from typing import Generator

import numpy as np
import pytest

from wsn_graph_filtering.graph import build_shift, generate_topology, topology_from_positions
from wsn_graph_filtering.models import RadioParams, ShiftKind, Topology


@pytest.fixture
def temp_dir() -> Generator[Path, None, None]:
    """Create a temporary directory for tests."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for test data."""
    return np.random.default_rng(20240611)


@pytest.fixture
def radio() -> RadioParams:
    """Default radio parameters (0 dBm, -100 dBm noise, nu 2.5, kappa 1)."""
    return RadioParams()


@pytest.fixture
def path_topology() -> Topology:
    """Four nodes on a line, 10 m apart, each reaching only its direct neighbors."""
    positions = np.array([[0.0, 0.0], [10.0, 0.0], [20.0, 0.0], [30.0, 0.0]])
    return topology_from_positions(positions, side_len=30.0, r_broadcast=12.0)


@pytest.fixture
def small_topology() -> Topology:
    """Twelve random nodes on a 100 m square with a 45 m broadcast range."""
    return generate_topology(12, side_len=100.0, r_broadcast=45.0, seed=11)


@pytest.fixture
def small_shift(small_topology):
    """Normalized shifted Laplacian of the small topology."""
    return build_shift(small_topology, ShiftKind.NORMALIZED_SHIFTED)


@pytest.fixture
def write_config(temp_dir: Path):
    """Write a YAML configuration into the temporary directory."""

    def _write(text: str, name: str = "experiment.yaml") -> Path:
        path = temp_dir / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write
