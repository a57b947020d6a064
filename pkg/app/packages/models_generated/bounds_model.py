"""Sample-complexity report."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, model_validator


class BoundReport(BaseModel):
    """Necessary-condition sample bounds for one (m, theta, epsilon)."""

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "m": 30,
                "theta": 0.2,
                "epsilon": 0.01,
                "n0": 42.05,
                "n1": 42.4,
                "n2": 54.76,
                "n3": 65.23,
                "n_star": 65.23,
                "n_star_rounded": 65,
                "asymptotic_threshold": 1.25,
            }
        },
    )

    m: int = Field(..., ge=2)
    theta: float = Field(..., gt=0, lt=1)
    epsilon: float = Field(..., gt=0, lt=1)
    n0: float = Field(..., description="m + E|Omega|/m - 1 evaluated at n = n_star")
    n1: float = Field(..., gt=0)
    n2: float = Field(..., gt=0)
    n3: float = Field(..., gt=0)
    n_star: float = Field(..., gt=0)
    n_star_rounded: int = Field(..., ge=1)
    asymptotic_threshold: float = Field(..., gt=1)

    @model_validator(mode="after")
    def check_ordering(self) -> "BoundReport":
        if self.n1 > self.n2 * (1 + 1e-12):
            raise ValueError(f"n1={self.n1} exceeds n2={self.n2}")
        if self.n_star != max(self.n2, self.n3):
            raise ValueError("n_star must equal max(n2, n3)")
        return self
