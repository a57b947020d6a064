"""Tests for seeding, synthetic generators and pattern corruption."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from pydantic import ValidationError

from app.packages.base.errors import ConfigError, InsufficientComplementError
from app.packages.model import SupportPattern
from app.packages.models_generated import GenConfig
from app.packages.synth import (
    corrupt_pattern,
    derive_seed,
    gen_coeffs,
    gen_dictionary,
    gen_training_set,
    stream,
)


def test_derive_seed_is_stable_and_index_sensitive():
    assert derive_seed(7, 0, 1) == derive_seed(7, 0, 1)
    assert derive_seed(7, 0, 1) != derive_seed(7, 1, 0)
    assert derive_seed(7, 0, 1) != derive_seed(8, 0, 1)
    assert 0 <= derive_seed(2**64 - 1, 3) < 2**64


def test_streams_are_independent_per_tag():
    first = stream(5, "coeffs").random(4)
    assert np.array_equal(first, stream(5, "coeffs").random(4))
    assert not np.array_equal(first, stream(5, "noise").random(4))


def test_same_seed_gives_identical_training_sets():
    cfg = GenConfig(m=6, l=8, n=40, theta=0.3, seed=123)
    a, b = gen_training_set(cfg), gen_training_set(cfg)
    assert np.array_equal(a.samples, b.samples)
    assert a.ground_truth[1].pattern == b.ground_truth[1].pattern


def test_dictionary_entries_have_variance_one_over_m():
    d = gen_dictionary(GenConfig(m=64, l=400, n=1, theta=0.5, seed=3))
    assert d.atoms.shape == (64, 400)
    assert np.var(d.atoms) == pytest.approx(1 / 64, rel=0.05)


def test_coefficients_follow_sparsity_ratio():
    x = gen_coeffs(GenConfig(m=4, l=50, n=2000, theta=0.2, seed=9))
    assert x.pattern.size / x.values.size == pytest.approx(0.2, abs=0.01)
    assert np.all(x.values[x.pattern.mask()] != 0.0)


def test_noise_free_samples_equal_product():
    training = gen_training_set(GenConfig(m=5, l=7, n=30, theta=0.4, seed=1))
    d0, x0 = training.ground_truth
    assert np.allclose(training.samples, d0.atoms @ x0.values)


@pytest.mark.parametrize("snr_db", [0.0, 15.0, 30.0])
def test_noise_is_scaled_to_exact_snr(snr_db):
    training = gen_training_set(GenConfig(m=8, l=8, n=60, theta=0.3, seed=4, snr_db=snr_db))
    d0, x0 = training.ground_truth
    clean = d0.atoms @ x0.values
    noise = training.samples - clean
    measured = 10 * math.log10(np.sum(clean**2) / np.sum(noise**2))
    assert measured == pytest.approx(snr_db, abs=1e-9)


def test_infinite_snr_means_noise_free():
    assert GenConfig(m=2, l=2, n=2, theta=0.5, snr_db=math.inf).snr_db is None
    with pytest.raises(ValidationError):
        GenConfig(m=2, l=2, n=2, theta=0.5, snr_db=math.nan)


@settings(deadline=None, max_examples=40)
@given(r=st.floats(0.0, 1.0), seed=st.integers(0, 2**32))
def test_corruption_keeps_size_and_moves_floor_r_entries(r, seed):
    pattern = SupportPattern.from_mask(stream(seed, "coeffs").random((6, 20)) < 0.25)
    if math.floor(r * pattern.size) > pattern.l * pattern.n - pattern.size:
        return
    corrupted = corrupt_pattern(pattern, r, seed)
    assert corrupted.size == pattern.size
    kept = np.logical_and(corrupted.mask(), pattern.mask()).sum()
    assert pattern.size - kept == math.floor(r * pattern.size)


def test_corruption_zero_ratio_is_identity():
    pattern = SupportPattern(l=2, n=3, rows=((0,), (1, 2)))
    assert corrupt_pattern(pattern, 0.0, 1) == pattern


def test_corruption_rejects_bad_ratio_and_full_pattern():
    with pytest.raises(ConfigError):
        corrupt_pattern(SupportPattern.empty(2, 2), 1.5, 0)
    with pytest.raises(InsufficientComplementError):
        corrupt_pattern(SupportPattern.full(2, 3), 0.5, 0)
