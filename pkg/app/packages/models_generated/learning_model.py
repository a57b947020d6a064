"""Sparse coding, dictionary update and learning-loop configuration."""

from __future__ import annotations

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class OmpConfig(BaseModel):
    """Stopping rules for orthogonal matching pursuit; at least one must be set."""

    model_config = ConfigDict(frozen=True)

    k: Optional[int] = Field(None, ge=1, description="Maximum nonzeros per column")
    residual_tol: Optional[float] = Field(None, ge=0, description="l2 residual stopping threshold")

    @model_validator(mode="after")
    def require_stopping_rule(self) -> "OmpConfig":
        if self.k is None and self.residual_tol is None:
            raise ValueError("OmpConfig needs k, residual_tol, or both")
        return self


class UpdateMethod(str, Enum):
    MOD = "mod"
    KSVD = "ksvd"
    BLOTLESS_LS = "blotless_ls"
    BLOTLESS_PARTLS = "blotless_partls"
    BLOTLESS_ITERTLS = "blotless_itertls"
    BLOTLESS_STLS = "blotless_stls"

    @property
    def is_blotless(self) -> bool:
        return self.value.startswith("blotless")

    @property
    def label(self) -> str:
        return {
            "mod": "MOD",
            "ksvd": "K-SVD",
            "blotless_ls": "BLOTLESS-LS",
            "blotless_partls": "BLOTLESS-ParTLS",
            "blotless_itertls": "BLOTLESS-IterTLS",
            "blotless_stls": "BLOTLESS-STLS",
        }[self.value]


class UpdateConfig(BaseModel):
    """Dictionary update method and its inner-solver budgets."""

    model_config = ConfigDict(frozen=True)

    method: UpdateMethod = UpdateMethod.BLOTLESS_ITERTLS
    iter_tls_max_iters: int = Field(10, ge=1)
    iter_tls_tol: float = Field(1e-8, ge=0)
    stls_max_iters: int = Field(10, ge=1)
    stls_step_rtol: float = Field(1e-8, ge=0)
    stls_size_cap: int = Field(64 * 200, ge=1, description="Largest m*n accepted by STLS")
    block_size: Optional[int] = Field(None, ge=1, description="Atoms per BLOTLESS block; defaults to m")

    def resolved_block_size(self, m: int) -> int:
        return m if self.block_size is None else self.block_size


class LearnConfig(BaseModel):
    """Alternating sparse-coding / dictionary-update loop."""

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "update": {"method": "blotless_itertls", "block_size": 32},
                "omp": {"k": 5},
                "n_atoms": 32,
                "n_iterations": 50,
                "seed": 1,
            }
        },
    )

    update: UpdateConfig = Field(default_factory=UpdateConfig)
    omp: OmpConfig
    n_atoms: int = Field(..., ge=1)
    n_iterations: int = Field(..., ge=1)
    seed: int = Field(0, ge=0, lt=2**64)
