"""Tests for experiment preset and spec loading."""

from __future__ import annotations

import json

import pytest
import yaml

from app.packages.base.errors import ConfigError
from app.packages.models_generated import ExperimentKind, UpdateMethod
from app.packages.orchestration import PRESETS_ENV, load_presets, load_spec_file, presets_path, resolve_spec


def test_shipped_presets_cover_every_kind():
    presets = load_presets()
    for kind in ExperimentKind:
        assert presets.get(kind).kind is kind
        assert presets.get(kind, full=True).kind is kind
    phase = presets.get(ExperimentKind.PHASE_TRANSITION)
    assert phase.m == [30]
    assert phase.theta == [0.2]
    assert phase.trials == 100


def test_presets_path_prefers_argument_then_environment(tmp_path, monkeypatch):
    explicit = tmp_path / "explicit.yaml"
    assert presets_path(explicit) == explicit
    monkeypatch.setenv(PRESETS_ENV, str(tmp_path / "env.yaml"))
    assert presets_path() == tmp_path / "env.yaml"


def test_load_presets_from_custom_file(tmp_path):
    path = tmp_path / "presets.yaml"
    path.write_text(
        yaml.safe_dump({"desk": {"learn_curve": {"m": [8], "methods": ["mod", "ksvd"], "trials": 2}}}),
        encoding="utf-8",
    )
    presets = load_presets(path)
    spec = presets.get(ExperimentKind.LEARN_CURVE)
    assert spec.methods == [UpdateMethod.MOD, UpdateMethod.KSVD]
    with pytest.raises(ConfigError):
        presets.get(ExperimentKind.LEARN_CURVE, full=True)


@pytest.mark.parametrize(
    "payload",
    [
        "- not\n- a mapping\n",
        yaml.safe_dump({"desk": {"unknown_kind": {}}}),
        yaml.safe_dump({"desk": {"phase_transition": {"theta": [1.5]}}}),
        yaml.safe_dump({"desk": {"phase_transition": {"typo_field": 1}}}),
        yaml.safe_dump({"desk": ["phase_transition"]}),
        "desk: [unclosed\n",
    ],
)
def test_invalid_presets_raise_config_error(tmp_path, payload):
    path = tmp_path / "bad.yaml"
    path.write_text(payload, encoding="utf-8")
    with pytest.raises(ConfigError):
        load_presets(path)


def test_missing_presets_file(tmp_path):
    with pytest.raises(ConfigError):
        load_presets(tmp_path / "absent.yaml")


def test_spec_file_kind_is_filled_and_checked(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps({"m": [8], "n": [40], "trials": 3}), encoding="utf-8")
    spec = load_spec_file(path, ExperimentKind.PATTERN_ROBUSTNESS)
    assert spec.kind is ExperimentKind.PATTERN_ROBUSTNESS
    with pytest.raises(ConfigError):
        path.write_text(json.dumps({"kind": "denoise"}), encoding="utf-8")
        load_spec_file(path, ExperimentKind.PATTERN_ROBUSTNESS)
    with pytest.raises(ConfigError):
        path.write_text("[1, 2]", encoding="utf-8")
        load_spec_file(path)


def test_resolve_spec_applies_non_none_overrides(tmp_path):
    spec = resolve_spec(ExperimentKind.PHASE_TRANSITION, overrides={"base_seed": 7, "threads": None})
    assert spec.base_seed == 7
    assert spec.threads == 1
    path = tmp_path / "spec.json"
    path.write_text(json.dumps({"kind": "runtime_bench", "m": [4], "n": [20]}), encoding="utf-8")
    from_file = resolve_spec(ExperimentKind.RUNTIME_BENCH, spec_file=path, overrides={"trials": 2})
    assert (from_file.m, from_file.trials) == ([4], 2)


def test_shipped_denoise_preset_points_at_fixture_images(images_dir):
    spec = load_presets().get(ExperimentKind.DENOISE)
    assert spec.images_dir == str(images_dir.resolve())


def test_relative_images_dir_follows_the_config_file(tmp_path, monkeypatch):
    config_dir = tmp_path / "configs"
    config_dir.mkdir()
    path = config_dir / "presets.yaml"
    path.write_text(yaml.safe_dump({"desk": {"denoise": {"images_dir": "../images"}}}), encoding="utf-8")
    spec_path = config_dir / "denoise.json"
    spec_path.write_text(json.dumps({"images_dir": "pictures", "sigmas": [10.0]}), encoding="utf-8")
    absolute = tmp_path / "elsewhere"

    monkeypatch.chdir(tmp_path / "configs")
    assert load_presets(path).get(ExperimentKind.DENOISE).images_dir == str((tmp_path / "images").resolve())
    from_file = load_spec_file(spec_path, ExperimentKind.DENOISE)
    assert from_file.images_dir == str((config_dir / "pictures").resolve())
    overridden = resolve_spec(ExperimentKind.DENOISE, spec_file=spec_path, overrides={"images_dir": str(absolute)})
    assert overridden.images_dir == str(absolute)
