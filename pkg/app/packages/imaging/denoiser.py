"""Patch-wise sparse-coding denoiser."""

from __future__ import annotations

import logging

from app.packages.base.errors import DimensionMismatchError
from app.packages.coding import omp_encode_all
from app.packages.model import Dictionary
from app.packages.models_generated import OmpConfig, PatchConfig

from .patches import extract_patches, reconstruct_from_patches
from .pgm import GrayImage


logger = logging.getLogger(__name__)


def denoise_omp_config(cfg: PatchConfig) -> OmpConfig:
    """Stop at ``gain * sigma * patch`` residual (an l2 ball for ``patch**2`` noisy pixels), at most ``m/2`` atoms."""

    return OmpConfig(k=max(1, cfg.m // 2), residual_tol=cfg.omp_error_gain * cfg.sigma * cfg.patch)


def denoise(img: GrayImage, d: Dictionary, cfg: PatchConfig) -> GrayImage:
    if d.m != cfg.m:
        raise DimensionMismatchError(f"dictionary has m={d.m}, patches have {cfg.m} pixels")
    patches, means = extract_patches(img, cfg)
    coeffs = omp_encode_all(d, patches, denoise_omp_config(cfg))
    restored = reconstruct_from_patches(d.atoms @ coeffs.values, means, (img.height, img.width), cfg)
    logger.debug(
        "Denoised %dx%d image with %d patches, %.2f atoms per patch",
        img.height, img.width, patches.shape[1], coeffs.pattern.size / max(1, patches.shape[1]),
    )
    return restored


__all__ = ["denoise", "denoise_omp_config"]
