"""Desk-scale Monte-Carlo trend checks. Minutes each; run with ``--run-slow``."""

from __future__ import annotations

import math

import numpy as np
import pytest

from app.packages.bounds import compute_bounds
from app.packages.eval import psnr
from app.packages.experiments import (
    run_denoise,
    run_learn_curve,
    run_pattern_robustness,
    run_phase_transition,
    run_runtime_bench,
)
from app.packages.imaging import GrayImage, add_noise, list_images, load_pgm
from app.packages.models_generated import ExperimentKind, UpdateMethod
from app.packages.orchestration import load_presets


pytestmark = pytest.mark.slow


@pytest.fixture(scope="module")
def presets():
    return load_presets()


def test_phase_transition_crosses_near_the_bound(presets):
    result = run_phase_transition(presets.get(ExperimentKind.PHASE_TRANSITION))
    n_star = compute_bounds(30, 0.2, 0.01).n_star_rounded
    n_sim = result.values("n_sim", summary=True)[0]
    assert not math.isnan(n_sim)
    assert 0.85 * n_star <= n_sim <= 1.15 * n_star


def test_itertls_learns_better_than_baselines(presets):
    spec = presets.get(ExperimentKind.LEARN_CURVE)
    assert list(spec.snr_db) == [None, 15.0]
    result = run_learn_curve(spec)

    def final(method: UpdateMethod, grid_index: int) -> float:
        return result.values("median_final_r_err", method=method.label, grid_index=grid_index, summary=True)[0]

    for grid_index in (0, 1):
        blotless = final(UpdateMethod.BLOTLESS_ITERTLS, grid_index)
        assert blotless < final(UpdateMethod.MOD, grid_index)
        assert blotless < final(UpdateMethod.KSVD, grid_index)
    assert final(UpdateMethod.BLOTLESS_ITERTLS, 1) > final(UpdateMethod.BLOTLESS_ITERTLS, 0)
    assert final(UpdateMethod.BLOTLESS_ITERTLS, 1) > 1e-6


def test_update_runtime_ordering(presets):
    result = run_runtime_bench(presets.get(ExperimentKind.RUNTIME_BENCH))
    for grid_index in (0, 1):

        def mean(method: UpdateMethod) -> float:
            return result.values("mean_update_seconds", method=method.label, grid_index=grid_index, summary=True)[0]

        assert mean(UpdateMethod.BLOTLESS_ITERTLS) < mean(UpdateMethod.BLOTLESS_PARTLS)
        assert mean(UpdateMethod.BLOTLESS_PARTLS) < mean(UpdateMethod.BLOTLESS_STLS)


def test_itertls_tolerates_pattern_corruption(presets):
    spec = presets.get(ExperimentKind.PATTERN_ROBUSTNESS)
    result = run_pattern_robustness(spec)
    grid_index = spec.r.index(0.1)

    def median(method: UpdateMethod) -> float:
        return result.values("median_r_err", method=method.label, grid_index=grid_index, summary=True)[0]

    assert median(UpdateMethod.BLOTLESS_ITERTLS) < median(UpdateMethod.MOD)


@pytest.mark.parametrize("sigma, expected", [(10.0, 28.13), (20.0, 22.11), (30.0, 18.59)])
def test_noisy_input_psnr_on_fixture_images(images_dir, sigma, expected):
    for path in list_images(images_dir):
        clean = GrayImage(np.tile(load_pgm(path).pixels, (4, 4)))
        noisy = add_noise(clean, sigma, seed=int(sigma))
        assert psnr(clean.pixels, noisy.pixels) == pytest.approx(expected, abs=0.15)


def test_blotless_dictionary_denoises_by_three_db(presets, images_dir):
    spec = presets.get(ExperimentKind.DENOISE).model_copy(update={"images_dir": str(images_dir), "sigmas": [10.0]})
    result = run_denoise(spec)
    noisy = result.values("psnr_noisy", method="noisy")
    restored = result.values("psnr_denoised", method=UpdateMethod.BLOTLESS_ITERTLS.label)
    assert noisy.shape == restored.shape == (2,)
    assert np.all(restored - noisy >= 3.0)
