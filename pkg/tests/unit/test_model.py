"""Tests for dictionaries, support patterns, coefficients and training sets."""

from __future__ import annotations

import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from app.packages.base.errors import ConfigError, DimensionMismatchError, ZeroAtomError
from app.packages.model import (
    Dictionary,
    SparseCoeffs,
    SupportPattern,
    TrainingSet,
    normalize,
    project_to_pattern,
)


def test_dictionary_rejects_zero_atom():
    atoms = np.eye(3)
    atoms[:, 1] = 0.0
    with pytest.raises(ZeroAtomError) as excinfo:
        Dictionary(atoms)
    assert excinfo.value.atom_index == 1


def test_dictionary_is_read_only(rng):
    d = Dictionary(rng.standard_normal((3, 4)))
    with pytest.raises(ValueError):
        d.atoms[0, 0] = 1.0


def test_normalize_preserves_product(rng):
    d = Dictionary(rng.standard_normal((4, 6)) * 3.0)
    mask = rng.random((6, 10)) < 0.4
    x = SparseCoeffs(np.where(mask, rng.standard_normal((6, 10)), 0.0), SupportPattern.from_mask(mask))
    unit, scaling = normalize(d)
    assert unit.is_normalized()
    assert np.allclose(unit.atoms @ x.scale_rows(scaling).values, d.atoms @ x.values)


def test_normalize_twice_is_a_no_op(rng):
    unit, _ = normalize(Dictionary(rng.standard_normal((5, 7)) * 4.0))
    again, scaling = normalize(unit)
    assert np.allclose(again.atoms, unit.atoms, atol=1e-15)
    assert np.allclose(scaling, 1.0, atol=1e-15)


@settings(deadline=None)
@given(mask=arrays(dtype=bool, shape=st.tuples(st.integers(1, 6), st.integers(1, 9))))
def test_pattern_mask_round_trip(mask):
    pattern = SupportPattern.from_mask(mask)
    assert np.array_equal(pattern.mask(), mask)
    assert pattern.size == int(mask.sum())
    for i in range(pattern.l):
        assert set(pattern.complement(i)) | set(pattern.rows[i]) == set(range(pattern.n))


def test_pattern_rejects_unsorted_or_out_of_range_rows():
    with pytest.raises(ConfigError):
        SupportPattern(l=1, n=4, rows=((2, 1),))
    with pytest.raises(ConfigError):
        SupportPattern(l=1, n=4, rows=((4,),))
    with pytest.raises(DimensionMismatchError):
        SupportPattern(l=2, n=4, rows=((0,),))


def test_pattern_row_helpers():
    pattern = SupportPattern(l=3, n=4, rows=((0, 2), (), (1, 3)))
    assert pattern.empty_rows() == [1]
    assert pattern.select_rows([2, 0]).rows == ((1, 3), (0, 2))
    assert pattern.with_rows_cleared([0]).rows == ((), (), (1, 3))


def test_pattern_save_and_load(tmp_path):
    pattern = SupportPattern(l=2, n=3, rows=((0, 2), (1,)))
    path = pattern.save(tmp_path / "pattern.json")
    assert json.loads(path.read_text(encoding="utf-8")) == {"l": 2, "n": 3, "rows": [[0, 2], [1]]}
    assert SupportPattern.load(path) == pattern


def test_pattern_load_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        SupportPattern.load(tmp_path / "absent.json")


def test_coeffs_reject_values_off_support():
    pattern = SupportPattern(l=1, n=3, rows=((0,),))
    with pytest.raises(ConfigError):
        SparseCoeffs(np.array([[1.0, 2.0, 0.0]]), pattern)


def test_project_to_pattern_zeroes_complement(rng):
    x = rng.standard_normal((3, 5))
    pattern = SupportPattern.from_mask(np.eye(3, 5, dtype=bool))
    projected = project_to_pattern(x, pattern)
    assert np.array_equal(projected.values, np.where(np.eye(3, 5, dtype=bool), x, 0.0))


@settings(deadline=None)
@given(
    mask=arrays(dtype=bool, shape=(4, 7)),
    values=arrays(dtype=np.float64, shape=(4, 7), elements=st.floats(-1e6, 1e6)),
)
def test_project_to_pattern_is_idempotent(mask, values):
    pattern = SupportPattern.from_mask(mask)
    once = project_to_pattern(values, pattern)
    twice = project_to_pattern(once.values, pattern)
    assert np.array_equal(twice.values, once.values)
    assert twice.pattern == pattern


def test_training_set_export_and_load(tmp_path, exact_instance):
    target = exact_instance.export(tmp_path / "set")
    for name in ("Y.txt", "D0.txt", "X0.txt", "pattern.json", "training_set.json"):
        assert (target / name).exists()
    loaded = TrainingSet.load(target)
    d0, x0 = exact_instance.ground_truth
    assert np.array_equal(loaded.samples, exact_instance.samples)
    assert np.array_equal(loaded.ground_truth[0].atoms, d0.atoms)
    assert loaded.ground_truth[1].pattern == x0.pattern
    assert loaded.seed == exact_instance.seed
    assert loaded.theta == exact_instance.theta


def test_training_set_without_ground_truth(tmp_path, rng):
    training = TrainingSet(samples=rng.standard_normal((3, 7)))
    target = training.export(tmp_path / "plain")
    assert not (target / "D0.txt").exists()
    assert TrainingSet.load(target).ground_truth is None


def test_training_set_load_missing_sidecar(tmp_path):
    with pytest.raises(ConfigError):
        TrainingSet.load(tmp_path)
