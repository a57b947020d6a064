"""Grayscale images and 8-bit binary PGM (P5) I/O."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from app.packages.base.errors import ConfigError
from app.packages.numerics import as_matrix
from app.packages.synth import stream


logger = logging.getLogger(__name__)

PEAK = 255.0


@dataclass(frozen=True)
class GrayImage:
    """Pixel intensities on the 0..255 scale; values are left unclamped until written."""

    pixels: np.ndarray

    def __post_init__(self) -> None:
        pixels = np.array(as_matrix(self.pixels, "pixels"), copy=True)
        if pixels.size == 0:
            raise ConfigError("image must have at least one pixel")
        pixels.setflags(write=False)
        object.__setattr__(self, "pixels", pixels)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    def clamped(self) -> "GrayImage":
        return GrayImage(np.clip(self.pixels, 0.0, PEAK))


def load_pgm(path: str | Path) -> GrayImage:
    source = Path(path)
    try:
        with Image.open(source) as handle:
            if handle.format != "PPM" or handle.mode != "L":
                raise ConfigError(f"{source}: expected an 8-bit binary PGM, got {handle.format}/{handle.mode}")
            pixels = np.asarray(handle, dtype=np.float64)
    except (OSError, UnidentifiedImageError) as exc:
        raise ConfigError(f"{source}: unreadable image") from exc
    return GrayImage(pixels)


def save_pgm(image: GrayImage, path: str | Path) -> Path:
    """Clamp, round to 8 bits and write as binary PGM."""

    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    data = np.clip(np.rint(image.pixels), 0, 255).astype(np.uint8)
    Image.fromarray(data).save(target, format="PPM")
    return target


def add_noise(image: GrayImage, sigma: float, seed: int) -> GrayImage:
    """Additive i.i.d. Gaussian noise with standard deviation ``sigma`` (not clamped)."""

    if sigma < 0:
        raise ConfigError(f"sigma must be non-negative, got {sigma}")
    noise = stream(seed, "image-noise").standard_normal(image.pixels.shape) * sigma
    return GrayImage(image.pixels + noise)


def list_images(directory: str | Path) -> list[Path]:
    root = Path(directory)
    if not root.is_dir():
        raise ConfigError(f"image directory {root} does not exist")
    found = sorted(p for p in root.iterdir() if p.suffix.lower() == ".pgm")
    if not found:
        raise ConfigError(f"no .pgm images in {root}")
    logger.debug("Found %d images under %s", len(found), root)
    return found


__all__ = ["GrayImage", "PEAK", "add_noise", "list_images", "load_pgm", "save_pgm"]
