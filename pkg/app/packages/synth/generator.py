"""Synthetic dictionaries, Bernoulli-Gaussian coefficients and pattern corruption."""

from __future__ import annotations

import logging
import math

import numpy as np

from app.packages.base.errors import ConfigError, DegenerateSignalError, InsufficientComplementError
from app.packages.model import Dictionary, SparseCoeffs, SupportPattern, TrainingSet
from app.packages.models_generated import GenConfig

from .seeding import stream


logger = logging.getLogger(__name__)


def gen_dictionary(cfg: GenConfig) -> Dictionary:
    """``m x l`` matrix with i.i.d. N(0, 1/m) entries."""

    rng = stream(cfg.seed, "dictionary")
    return Dictionary(rng.standard_normal((cfg.m, cfg.l)) / math.sqrt(cfg.m))


def gen_coeffs(cfg: GenConfig) -> SparseCoeffs:
    """Bernoulli(theta) gate times standard normal value, drawn entrywise."""

    rng = stream(cfg.seed, "coeffs")
    mask = rng.random((cfg.l, cfg.n)) < cfg.theta
    values = rng.standard_normal((cfg.l, cfg.n))
    return SparseCoeffs(np.where(mask, values, 0.0), SupportPattern.from_mask(mask))


def gen_training_set(cfg: GenConfig) -> TrainingSet:
    d0 = gen_dictionary(cfg)
    x0 = gen_coeffs(cfg)
    samples = d0.atoms @ x0.values
    if cfg.snr_db is not None:
        signal_energy = float(np.sum(samples**2))
        if signal_energy == 0.0:
            raise DegenerateSignalError(
                f"cannot add noise at {cfg.snr_db} dB to an all-zero signal (seed {cfg.seed})"
            )
        noise = stream(cfg.seed, "noise").standard_normal(samples.shape)
        target_energy = signal_energy / 10.0 ** (cfg.snr_db / 10.0)
        noise *= math.sqrt(target_energy / float(np.sum(noise**2)))
        samples = samples + noise
    logger.debug(
        "Generated training set m=%d l=%d n=%d theta=%.3f |Omega|=%d seed=%d",
        cfg.m, cfg.l, cfg.n, cfg.theta, x0.pattern.size, cfg.seed,
    )
    return TrainingSet(samples=samples, ground_truth=(d0, x0), seed=cfg.seed, theta=cfg.theta, snr_db=cfg.snr_db)


def corrupt_pattern(pattern: SupportPattern, r: float, seed: int) -> SupportPattern:
    """Swap ``floor(r * |Omega|)`` support entries for as many entries of the global complement."""

    if not 0.0 <= r <= 1.0:
        raise ConfigError(f"corruption ratio must lie in [0, 1], got {r}")
    mask = pattern.mask().ravel()
    on = np.flatnonzero(mask)
    off = np.flatnonzero(~mask)
    moved = math.floor(r * on.size)
    if moved > off.size:
        raise InsufficientComplementError(
            f"cannot move {moved} entries: only {off.size} slots outside the support"
        )
    if moved == 0:
        return pattern
    rng = stream(seed, "corrupt")
    removed = rng.choice(on, size=moved, replace=False)
    added = rng.choice(off, size=moved, replace=False)
    mask[removed] = False
    mask[added] = True
    return SupportPattern.from_mask(mask.reshape(pattern.shape))


__all__ = ["corrupt_pattern", "gen_coeffs", "gen_dictionary", "gen_training_set"]
