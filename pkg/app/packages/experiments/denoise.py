"""Image denoising with dictionaries learned from clean training patches."""

from __future__ import annotations

import logging
import time
from pathlib import Path
from typing import Any

from app.packages.base.errors import ConfigError, SizeCapExceededError
from app.packages.base.pipeline import PipelineContext
from app.packages.eval import psnr
from app.packages.imaging import PEAK, add_noise, denoise, list_images, load_pgm, sample_training_patches
from app.packages.models_generated import ExperimentKind, ExperimentSpec, PatchConfig, UpdateMethod
from app.packages.synth import derive_seed
from app.packages.update import learn

from .results import ExperimentResult, ResultRow
from .runner import ExperimentRunner, Trial, learn_config, update_config


logger = logging.getLogger(__name__)

NOISY = "noisy"


class DenoiseRunner(ExperimentRunner):
    """Trains one dictionary per method once, then scores every ``(image, sigma, trial)``."""

    kind = ExperimentKind.DENOISE

    def _paths(self, spec: ExperimentSpec) -> list[Path]:
        if spec.images_dir is None:
            raise ConfigError("denoise needs images_dir (a directory of 8-bit binary PGM files)")
        return list_images(spec.images_dir)

    def grid(self, spec: ExperimentSpec) -> list[dict[str, Any]]:
        return [{"image": path.name, "sigma": sigma} for path in self._paths(spec) for sigma in spec.sigmas]

    def prepare(self, context: PipelineContext[ExperimentSpec]) -> None:
        spec = context.config
        images = {path.name: load_pgm(path) for path in self._paths(spec)}
        m = spec.patch * spec.patch
        l = spec.atom_counts(m)[0]  # noqa: E741
        theta = spec.theta[0]
        if UpdateMethod.BLOTLESS_STLS in spec.methods and m * spec.train_patches > spec.stls_size_cap:
            raise SizeCapExceededError(
                f"BLOTLESS-STLS on {spec.train_patches} patches of {m} pixels exceeds stls_size_cap={spec.stls_size_cap}"
            )
        training_seed = derive_seed(spec.base_seed)
        patches = sample_training_patches(list(images.values()), spec.train_patches, spec.patch, training_seed)

        dictionaries = {}
        for method in spec.methods:
            started = time.perf_counter()
            cfg = learn_config(spec, update_config(spec, method), theta=theta, l=l, seed=training_seed)
            dictionaries[method.label] = learn(patches, cfg).dictionary
            logger.info("Trained %s dictionary (%dx%d) in %.2fs", method.label, m, l, time.perf_counter() - started)
        context.params["images"] = images
        context.params["dictionaries"] = dictionaries

    def run_trial(self, context: PipelineContext[ExperimentSpec], trial: Trial) -> list[ResultRow]:
        spec = context.config
        clean = context.params["images"][trial.point["image"]]
        sigma = trial.point["sigma"]
        noisy = add_noise(clean, sigma, trial.seed)
        cfg = PatchConfig(patch=spec.patch, stride=spec.stride, sigma=sigma, omp_error_gain=spec.omp_error_gain)

        rows = [trial.row(NOISY, "psnr_noisy", psnr(clean.pixels, noisy.pixels, PEAK))]
        for label, dictionary in context.params["dictionaries"].items():
            started = time.perf_counter()
            restored = denoise(noisy, dictionary, cfg)
            rows.append(
                trial.row(
                    label,
                    "psnr_denoised",
                    psnr(clean.pixels, restored.pixels, PEAK),
                    seconds=time.perf_counter() - started,
                )
            )
        return rows


def run_denoise(spec: ExperimentSpec) -> ExperimentResult:
    """PSNR of the noisy input and of every method's reconstruction per image and noise level."""

    return DenoiseRunner().execute(spec)


__all__ = ["DenoiseRunner", "run_denoise"]
