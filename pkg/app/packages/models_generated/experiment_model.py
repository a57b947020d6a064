"""Experiment specification generated from schemas/experiment_spec.schema.json."""

from __future__ import annotations

from enum import Enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .learning_model import UpdateMethod


class ExperimentKind(str, Enum):
    PHASE_TRANSITION = "phase_transition"
    LEARN_CURVE = "learn_curve"
    PATTERN_ROBUSTNESS = "pattern_robustness"
    BLOCK_SIZE_SWEEP = "block_size_sweep"
    RUNTIME_BENCH = "runtime_bench"
    BOUNDS_TABLE = "bounds_table"
    DENOISE = "denoise"


class ExperimentSpec(BaseModel):
    """Parameter grids and trial budget for one experiment run."""

    model_config = ConfigDict(
        frozen=True,
        extra="forbid",
        json_schema_extra={
            "example": {
                "kind": "phase_transition",
                "m": [30],
                "n": [50, 55, 60, 65, 70, 75],
                "theta": [0.2],
                "trials": 100,
                "base_seed": 2024,
            }
        },
    )

    kind: ExperimentKind
    m: List[int] = Field(default_factory=lambda: [16], min_length=1)
    l: Optional[List[int]] = Field(None, min_length=1, description="Atom counts; defaults to l = m")  # noqa: E741
    n: List[int] = Field(default_factory=lambda: [100], min_length=1)
    theta: List[float] = Field(default_factory=lambda: [0.2], min_length=1)
    r: List[float] = Field(default_factory=lambda: [0.0], min_length=1)
    snr_db: List[Optional[float]] = Field(default_factory=lambda: [None], min_length=1)
    methods: List[UpdateMethod] = Field(
        default_factory=lambda: [UpdateMethod.BLOTLESS_ITERTLS], min_length=1
    )
    block_sizes: List[int] = Field(default_factory=lambda: [16], min_length=1)
    sigmas: List[float] = Field(default_factory=lambda: [10.0, 20.0, 30.0], min_length=1)
    epsilon: float = Field(0.01, gt=0, lt=1)
    trials: int = Field(1, ge=1)
    base_seed: int = Field(0, ge=0, lt=2**64)
    n_iterations: int = Field(50, ge=1)
    omp_k: Optional[int] = Field(None, ge=1, description="OMP sparsity; defaults to max(1, round(theta*l))")
    iter_tls_max_iters: int = Field(10, ge=1)
    stls_max_iters: int = Field(10, ge=1)
    stls_size_cap: int = Field(64 * 200, ge=1)
    exact_tol: float = Field(1e-6, gt=0)
    threads: int = Field(1, ge=1)
    images_dir: Optional[str] = None
    train_patches: int = Field(500, ge=1)
    patch: int = Field(8, ge=1)
    stride: int = Field(1, ge=1)
    omp_error_gain: float = Field(1.15, gt=0)

    @field_validator("m", "n", "block_sizes")
    @classmethod
    def positive_sizes(cls, values: List[int]) -> List[int]:
        if any(v < 1 for v in values):
            raise ValueError("grid sizes must be positive")
        return values

    @field_validator("l")
    @classmethod
    def positive_atoms(cls, values: Optional[List[int]]) -> Optional[List[int]]:
        if values is not None and any(v < 1 for v in values):
            raise ValueError("atom counts must be positive")
        return values

    @field_validator("theta")
    @classmethod
    def theta_in_open_unit(cls, values: List[float]) -> List[float]:
        if any(not 0 < v < 1 for v in values):
            raise ValueError("theta values must lie in (0, 1)")
        return values

    @field_validator("r")
    @classmethod
    def corruption_in_unit(cls, values: List[float]) -> List[float]:
        if any(not 0 <= v < 1 for v in values):
            raise ValueError("corruption ratios must lie in [0, 1)")
        return values

    @field_validator("sigmas")
    @classmethod
    def non_negative_sigma(cls, values: List[float]) -> List[float]:
        if any(v < 0 for v in values):
            raise ValueError("noise levels must be non-negative")
        return values

    @model_validator(mode="after")
    def square_phase_transition(self) -> "ExperimentSpec":
        if self.kind is ExperimentKind.PHASE_TRANSITION and self.l is not None and self.l != self.m:
            raise ValueError("phase transition runs the square case; leave l unset or equal to m")
        return self

    def atom_counts(self, m: int) -> List[int]:
        return [m] if self.l is None else list(self.l)
