"""Peak signal-to-noise ratio."""

from __future__ import annotations

import math

import numpy as np

from app.packages.base.errors import DimensionMismatchError


def psnr(reference: np.ndarray, test: np.ndarray, peak: float = 255.0) -> float:
    """``10 log10(peak^2 / MSE)`` in dB; ``inf`` for identical inputs."""

    ref = np.asarray(reference, dtype=np.float64)
    out = np.asarray(test, dtype=np.float64)
    if ref.shape != out.shape:
        raise DimensionMismatchError(f"images differ in shape: {ref.shape} vs {out.shape}")
    mse = float(np.mean((ref - out) ** 2))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(peak * peak / mse)


def format_db(value: float) -> str:
    return "inf" if math.isinf(value) else f"{value:.2f}"


__all__ = ["format_db", "psnr"]
