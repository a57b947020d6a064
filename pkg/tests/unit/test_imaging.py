"""Tests for PGM I/O, the patch pipeline and the denoiser."""

from __future__ import annotations

import math

import numpy as np
import pytest
from PIL import Image

from app.packages.base.errors import ConfigError, DimensionMismatchError
from app.packages.eval import psnr
from app.packages.imaging import (
    GrayImage,
    add_noise,
    denoise,
    denoise_omp_config,
    extract_patches,
    list_images,
    load_pgm,
    patch_positions,
    reconstruct_from_patches,
    sample_training_patches,
    save_pgm,
)
from app.packages.models_generated import PatchConfig
from app.packages.update import random_dictionary


def test_pgm_round_trip_clamps_and_rounds(tmp_path):
    pixels = np.array([[-5.0, 0.4, 10.6], [128.0, 254.5, 300.0]])
    path = save_pgm(GrayImage(pixels), tmp_path / "nested" / "img.pgm")
    assert path.read_bytes().startswith(b"P5")
    loaded = load_pgm(path)
    assert np.array_equal(loaded.pixels, [[0.0, 0.0, 11.0], [128.0, 254.0, 255.0]])


def test_load_rejects_non_pgm(tmp_path):
    text = tmp_path / "notes.pgm"
    text.write_text("not an image", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_pgm(text)
    png = tmp_path / "color.pgm"
    Image.new("RGB", (4, 4)).save(png, format="PNG")
    with pytest.raises(ConfigError):
        load_pgm(png)
    with pytest.raises(ConfigError):
        load_pgm(tmp_path / "absent.pgm")


def test_fixture_images_are_listed_in_order(images_dir):
    paths = list_images(images_dir)
    assert [p.name for p in paths] == ["rings.pgm", "shapes.pgm"]
    image = load_pgm(paths[0])
    assert (image.height, image.width) == (64, 64)
    assert 0.0 <= image.pixels.min() and image.pixels.max() <= 255.0


def test_list_images_errors(tmp_path):
    with pytest.raises(ConfigError):
        list_images(tmp_path)
    with pytest.raises(ConfigError):
        list_images(tmp_path / "missing")


def test_patch_positions_include_last_offset():
    assert patch_positions(10, 4, 3) == [0, 3, 6]
    assert patch_positions(11, 4, 3) == [0, 3, 6, 7]
    assert patch_positions(4, 4, 2) == [0]
    with pytest.raises(ConfigError):
        patch_positions(3, 4, 1)


@pytest.mark.parametrize("stride", [1, 3, 5])
def test_extract_then_reconstruct_is_identity(rng, stride):
    image = GrayImage(rng.uniform(0.0, 255.0, size=(13, 17)))
    cfg = PatchConfig(patch=4, stride=stride)
    patches, means = extract_patches(image, cfg)
    assert patches.shape[0] == 16
    assert np.allclose(patches.mean(axis=0), 0.0)
    restored = reconstruct_from_patches(patches, means, (13, 17), cfg)
    assert np.allclose(restored.pixels, image.pixels)


def test_patch_columns_are_column_major():
    image = GrayImage(np.arange(16, dtype=float).reshape(4, 4))
    patches, means = extract_patches(image, PatchConfig(patch=2, stride=2))
    assert np.allclose(patches[:, 0] + means[0], [0.0, 4.0, 1.0, 5.0])


def test_reconstruct_checks_dimensions():
    with pytest.raises(DimensionMismatchError):
        reconstruct_from_patches(np.zeros((16, 3)), np.zeros(3), (8, 8), PatchConfig(patch=4, stride=4))


def test_training_patches_are_seeded_and_centered(images_dir):
    images = [load_pgm(p) for p in list_images(images_dir)]
    first = sample_training_patches(images, 50, 8, seed=3)
    assert first.shape == (64, 50)
    assert np.allclose(first.mean(axis=0), 0.0)
    assert np.array_equal(first, sample_training_patches(images, 50, 8, seed=3))
    with pytest.raises(ConfigError):
        sample_training_patches(images, 10, 65, seed=3)
    with pytest.raises(ConfigError):
        sample_training_patches([], 10, 8, seed=3)


@pytest.mark.parametrize("sigma, expected", [(10.0, 28.13), (20.0, 22.11), (30.0, 18.59)])
def test_noisy_input_psnr_matches_analytic_value(sigma, expected):
    clean = GrayImage(np.full((256, 256), 128.0))
    noisy = add_noise(clean, sigma, seed=7)
    assert psnr(clean.pixels, noisy.pixels) == pytest.approx(expected, abs=0.15)
    assert 20 * math.log10(255 / sigma) == pytest.approx(expected, abs=0.01)


def test_add_noise_rejects_negative_sigma():
    with pytest.raises(ConfigError):
        add_noise(GrayImage(np.zeros((2, 2))), -1.0, seed=0)


def test_denoise_omp_config():
    omp = denoise_omp_config(PatchConfig(patch=8, sigma=10.0))
    assert omp.k == 32
    assert omp.residual_tol == pytest.approx(1.15 * 10.0 * 8)


def test_denoise_keeps_shape_and_range(images_dir):
    image = load_pgm(list_images(images_dir)[1])
    cfg = PatchConfig(patch=4, stride=2, sigma=10.0)
    restored = denoise(add_noise(image, 10.0, seed=1), random_dictionary(16, 32, seed=2), cfg)
    assert restored.pixels.shape == image.pixels.shape
    assert restored.pixels.min() >= 0.0 and restored.pixels.max() <= 255.0
    with pytest.raises(DimensionMismatchError):
        denoise(image, random_dictionary(9, 9, seed=2), cfg)


def test_denoise_restores_a_constant_image_exactly():
    flat = GrayImage(np.full((24, 20), 97.0))
    cfg = PatchConfig(patch=4, stride=2, sigma=20.0)
    restored = denoise(flat, random_dictionary(16, 32, seed=4), cfg)
    assert np.allclose(restored.pixels, 97.0, atol=1e-9)
    assert psnr(restored.pixels, flat.pixels) == math.inf
