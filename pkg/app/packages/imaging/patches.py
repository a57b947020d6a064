"""Overlapping patch extraction and averaging reconstruction."""

from __future__ import annotations

import logging
from typing import Sequence

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from app.packages.base.errors import ConfigError, DimensionMismatchError
from app.packages.models_generated import PatchConfig
from app.packages.numerics import as_matrix
from app.packages.synth import stream

from .pgm import PEAK, GrayImage


logger = logging.getLogger(__name__)


def patch_positions(size: int, patch: int, stride: int) -> list[int]:
    """Top-left offsets along one axis; the last offset ``size - patch`` is always included."""

    if patch > size:
        raise ConfigError(f"patch {patch} larger than image side {size}")
    positions = list(range(0, size - patch + 1, stride))
    if positions[-1] != size - patch:
        positions.append(size - patch)
    return positions


def _vectorize(windows: np.ndarray) -> np.ndarray:
    # (..., p, p) -> columns flattened column-major
    p = windows.shape[-1]
    return np.swapaxes(windows, -1, -2).reshape(-1, p * p).T


def extract_patches(img: GrayImage, cfg: PatchConfig) -> tuple[np.ndarray, np.ndarray]:
    """Mean-subtracted patch columns in row-major corner order, plus the removed means."""

    rows = patch_positions(img.height, cfg.patch, cfg.stride)
    cols = patch_positions(img.width, cfg.patch, cfg.stride)
    windows = sliding_window_view(img.pixels, (cfg.patch, cfg.patch))[np.ix_(rows, cols)]
    columns = _vectorize(windows)
    means = columns.mean(axis=0)
    return columns - means, means


def reconstruct_from_patches(
    patches: np.ndarray, means: np.ndarray, img_dims: tuple[int, int], cfg: PatchConfig
) -> GrayImage:
    """Average every patch contribution per pixel, then clamp to the 8-bit range."""

    height, width = img_dims
    rows = patch_positions(height, cfg.patch, cfg.stride)
    cols = patch_positions(width, cfg.patch, cfg.stride)
    columns = as_matrix(patches, "patches")
    offsets = np.asarray(means, dtype=np.float64).ravel()
    expected = (cfg.m, len(rows) * len(cols))
    if columns.shape != expected or offsets.shape[0] != expected[1]:
        raise DimensionMismatchError(
            f"need {expected[0]}x{expected[1]} patches and {expected[1]} means for a {height}x{width} image, "
            f"got {columns.shape} and {offsets.shape[0]}"
        )
    p = cfg.patch
    blocks = (columns + offsets).T.reshape(-1, p, p).transpose(0, 2, 1)
    total = np.zeros((height, width))
    counts = np.zeros((height, width))
    k = 0
    for r in rows:
        for c in cols:
            total[r : r + p, c : c + p] += blocks[k]
            counts[r : r + p, c : c + p] += 1.0
            k += 1
    return GrayImage(np.clip(total / counts, 0.0, PEAK))


def sample_training_patches(images: Sequence[GrayImage], n: int, patch: int, seed: int) -> np.ndarray:
    """``n`` mean-subtracted patches drawn uniformly over all stride-1 positions of all images."""

    if not images:
        raise ConfigError("sample_training_patches needs at least one image")
    if n < 1:
        raise ConfigError(f"n must be positive, got {n}")
    windows = [sliding_window_view(img.pixels, (patch, patch)) for img in images if min(img.pixels.shape) >= patch]
    if len(windows) != len(images):
        raise ConfigError(f"every image must be at least {patch}x{patch}")
    counts = np.array([w.shape[0] * w.shape[1] for w in windows])
    offsets = np.cumsum(counts)
    picks = stream(seed, "patches").integers(0, int(offsets[-1]), size=n)
    owners = np.searchsorted(offsets, picks, side="right")
    columns = np.empty((patch * patch, n))
    for j, (pick, owner) in enumerate(zip(picks, owners)):
        local = int(pick - (offsets[owner] - counts[owner]))
        r, c = divmod(local, windows[owner].shape[1])
        columns[:, j] = windows[owner][r, c].ravel(order="F")
    logger.debug("Sampled %d training patches of size %dx%d from %d images", n, patch, patch, len(images))
    return columns - columns.mean(axis=0)


__all__ = ["extract_patches", "patch_positions", "reconstruct_from_patches", "sample_training_patches"]
