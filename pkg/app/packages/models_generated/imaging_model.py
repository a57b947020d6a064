"""Patch extraction and denoising parameters."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field


class PatchConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    patch: int = Field(8, ge=1, description="Patch side length; m = patch**2")
    stride: int = Field(1, ge=1)
    sigma: float = Field(0.0, ge=0, description="Noise standard deviation in gray levels")
    omp_error_gain: float = Field(1.15, gt=0, description="C in the C*sigma*sqrt(m) stopping threshold")

    @property
    def m(self) -> int:
        return self.patch * self.patch
