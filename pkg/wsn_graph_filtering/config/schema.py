"""Experiment configuration schema.

Every section rejects unknown keys. Physical quantities carry their unit
in the key name (``*_dbm``, ``*_m``, ``*_bits``).
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from wsn_graph_filtering.models import (
    CoefficientMode,
    DiagonalModel,
    RadioParams,
    SchedulerKind,
    ShiftKind,
)
from wsn_graph_filtering.optimize.solver import SolverSettings

# one-kilobyte frame
MAX_PACKET_BITS = 8192


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class TopologyConfig(_Section):
    """Deployment: random square, lattice, or positions loaded from a file."""

    kind: Literal["random", "grid", "file"] = "random"
    n: int = Field(default=100, ge=2)
    side_len_m: float = Field(default=150.0, gt=0)
    rows: int = Field(default=10, ge=1)
    cols: int = Field(default=10, ge=1)
    spacing_m: float = Field(default=10.0, gt=0)
    r_broadcast_m: float | None = Field(default=70.0, gt=0)
    positions_file: str | None = None
    seed: int | None = None

    @model_validator(mode="after")
    def _file_needs_path(self) -> TopologyConfig:
        if self.kind == "file" and not self.positions_file:
            raise ValueError("positions_file is required when kind is 'file'")
        return self


class RadioConfig(_Section):
    """Physical-layer parameters."""

    tx_power_dbm: float = 0.0
    noise_dbm: float = -100.0
    nu: float = Field(default=2.5, gt=0)
    kappa: float = Field(default=1.0, gt=0)
    chi: float = Field(default=0.5, gt=0, lt=1)
    packet_bits: int = Field(default=176, ge=1, le=MAX_PACKET_BITS)
    ber_consts: tuple[float, int, float] = (1.0 / 30.0, 16, 20.0)
    r_broadcast_m: float | None = Field(default=None, gt=0)

    def to_params(self) -> RadioParams:
        return RadioParams(
            tx_power_dbm=self.tx_power_dbm,
            noise_dbm=self.noise_dbm,
            nu=self.nu,
            kappa=self.kappa,
            chi=self.chi,
            packet_bits=self.packet_bits,
            ber_consts=self.ber_consts,
            r_broadcast_m=self.r_broadcast_m,
        )


class ShiftConfig(_Section):
    kind: ShiftKind = ShiftKind.NORMALIZED_SHIFTED
    diagonal: DiagonalModel = DiagonalModel.REALIZED_DEGREE


class TargetConfig(_Section):
    """Target coefficients h: truncated Tikhonov taps (-w)^l, or explicit values."""

    kind: Literal["arma_truncation", "explicit"] = "arma_truncation"
    w: float = 0.45
    values: list[float] | None = None

    @model_validator(mode="after")
    def _explicit_needs_values(self) -> TargetConfig:
        if self.kind == "explicit" and not self.values:
            raise ValueError("values are required when kind is 'explicit'")
        return self


class FilterConfig(_Section):
    mode: CoefficientMode = CoefficientMode.NODE_VARIANT
    order: int = Field(default=5, ge=0)
    target: TargetConfig = Field(default_factory=TargetConfig)

    @model_validator(mode="after")
    def _target_matches_order(self) -> FilterConfig:
        if self.target.kind == "explicit" and len(self.target.values) != self.order + 1:
            raise ValueError(f"explicit target needs order + 1 = {self.order + 1} values")
        return self


class OptimizerConfig(_Section):
    mu: float = Field(default=0.001, ge=0)
    rho: float | None = Field(default=None, gt=0)
    max_iter: int = Field(default=50_000, ge=1)
    step_scale: float | None = Field(default=None, gt=0)
    tol: float = Field(default=1e-6, gt=0)
    patience: int = Field(default=500, ge=1)
    max_restarts: int = Field(default=12, ge=0)

    def to_settings(self) -> SolverSettings:
        return SolverSettings(
            max_iter=self.max_iter,
            tol=self.tol,
            patience=self.patience,
            max_restarts=self.max_restarts,
            step_scale=self.step_scale,
        )


class SweepConfig(_Section):
    q_values: list[float] = Field(
        default_factory=lambda: [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0], min_length=1
    )

    @field_validator("q_values")
    @classmethod
    def _probabilities(cls, values: list[float]) -> list[float]:
        for q in values:
            if not 0.0 < q <= 1.0:
                raise ValueError(f"q values must lie in (0, 1], got {q}")
        return values


class SchedulerConfig(_Section):
    kinds: list[SchedulerKind] = Field(
        default_factory=lambda: [
            SchedulerKind.CDSA,
            SchedulerKind.LBPIM,
            SchedulerKind.RLBA,
            SchedulerKind.COLORING,
        ],
        min_length=1,
    )
    n_estimate: int | None = Field(default=None, ge=1)
    rlba_probability: float | None = Field(default=None, gt=0, le=1)
    truncate_surplus: bool = False


class ExperimentSection(_Section):
    """Monte Carlo settings.

    ``replicas`` independent deployments are drawn from ``master_seed``;
    each runs ``trials`` filtering trials.
    """

    trials: int = Field(default=1000, ge=2)
    replicas: int = Field(default=1, ge=1)
    master_seed: int = Field(default=0, ge=0)
    noise_std: float = Field(default=0.1, ge=0)
    smooth_w_gen: float = Field(default=5.0, gt=0)
    rho_check_trials: int = Field(default=50, ge=0)
    threads: int = Field(default=1, ge=1)


class OutputConfig(_Section):
    out_dir: str = "results"


class ExperimentConfig(_Section):
    """Complete experiment configuration."""

    topology: TopologyConfig = Field(default_factory=TopologyConfig)
    radio: RadioConfig = Field(default_factory=RadioConfig)
    shift: ShiftConfig = Field(default_factory=ShiftConfig)
    filter: FilterConfig = Field(default_factory=FilterConfig)
    optimizer: OptimizerConfig = Field(default_factory=OptimizerConfig)
    sweep: SweepConfig = Field(default_factory=SweepConfig)
    scheduler: SchedulerConfig = Field(default_factory=SchedulerConfig)
    experiment: ExperimentSection = Field(default_factory=ExperimentSection)
    output: OutputConfig = Field(default_factory=OutputConfig)
