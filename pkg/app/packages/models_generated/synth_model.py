"""Synthetic instance configuration generated from schemas/gen_config.schema.json."""

from __future__ import annotations

import math
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator


class GenConfig(BaseModel):
    """Dimensions, sparsity ratio, seed and optional SNR of a synthetic instance."""

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {"m": 16, "l": 16, "n": 120, "theta": 0.2, "seed": 7, "snr_db": 15.0}
        },
    )

    m: int = Field(..., ge=1, description="Signal dimension")
    l: int = Field(..., ge=1, description="Number of atoms")  # noqa: E741
    n: int = Field(..., ge=1, description="Number of training samples")
    theta: float = Field(..., gt=0, lt=1, description="Bernoulli-Gaussian sparsity ratio")
    seed: int = Field(0, ge=0, lt=2**64, description="Base seed for every generator stream")
    snr_db: Optional[float] = Field(None, description="Measurement SNR in dB; absent or +inf means noise free")

    @field_validator("snr_db")
    @classmethod
    def infinite_snr_is_noise_free(cls, v: Optional[float]) -> Optional[float]:
        if v is None:
            return None
        if math.isnan(v) or v == -math.inf:
            raise ValueError("snr_db must be a real number or +inf")
        return None if v == math.inf else v

    def with_seed(self, seed: int) -> "GenConfig":
        return self.model_copy(update={"seed": seed})
