"""Load experiment presets and spec files."""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

import yaml

from app.packages.base.errors import ConfigError
from app.packages.models_generated import ExperimentKind, ExperimentSpec


logger = logging.getLogger(__name__)

PRESETS_ENV = "BLOTLESS_PRESETS"
DEFAULT_PRESETS = Path(__file__).resolve().parents[3] / "configs" / "experiments.yaml"
SCALES = ("desk", "full")
PATH_FIELDS = ("images_dir",)


def _anchor_paths(payload: Mapping[str, Any], base: Path) -> Dict[str, Any]:
    """Resolve relative path fields against ``base``, the directory of the file they came from."""

    anchored = dict(payload)
    for key in PATH_FIELDS:
        value = anchored.get(key)
        if isinstance(value, str) and not Path(value).is_absolute():
            anchored[key] = str((base / value).resolve())
    return anchored


@dataclass(frozen=True)
class ExperimentPresets:
    desk: Dict[ExperimentKind, ExperimentSpec]
    full: Dict[ExperimentKind, ExperimentSpec]

    def get(self, kind: ExperimentKind, *, full: bool = False) -> ExperimentSpec:
        table = self.full if full else self.desk
        if kind not in table:
            raise ConfigError(f"no {'full' if full else 'desk'} preset for experiment {kind.value}")
        return table[kind]


def presets_path(path: Path | None = None) -> Path:
    if path is not None:
        return path
    override = os.environ.get(PRESETS_ENV)
    return Path(override) if override else DEFAULT_PRESETS


def _parse_scale(scale: str, payload: Any, source: Path) -> Dict[ExperimentKind, ExperimentSpec]:
    if payload is None:
        return {}
    if not isinstance(payload, Mapping):
        raise ConfigError(f"{source}: '{scale}' must map experiment kinds to specs")
    specs: Dict[ExperimentKind, ExperimentSpec] = {}
    for name, spec_payload in payload.items():
        try:
            kind = ExperimentKind(name)
            payload_with_kind = {"kind": kind.value, **(spec_payload or {})}
            specs[kind] = ExperimentSpec.model_validate(_anchor_paths(payload_with_kind, source.parent))
        except ValueError as exc:
            raise ConfigError(f"{source}: invalid {scale} preset '{name}': {exc}") from exc
    return specs


def load_presets(path: Path | None = None) -> ExperimentPresets:
    config_path = presets_path(path)
    try:
        data = yaml.safe_load(config_path.read_text(encoding="utf-8")) or {}
    except (OSError, yaml.YAMLError) as exc:
        raise ConfigError(f"cannot read presets from {config_path}") from exc
    if not isinstance(data, Mapping):
        raise ConfigError(f"{config_path}: presets must be a mapping")
    logger.debug("Loaded experiment presets from %s", config_path)
    return ExperimentPresets(**{scale: _parse_scale(scale, data.get(scale), config_path) for scale in SCALES})


def load_spec_file(path: Path, kind: Optional[ExperimentKind] = None) -> ExperimentSpec:
    """Read a JSON spec; ``kind`` fills in or must match the file's ``kind``.

    A relative ``images_dir`` is taken relative to the spec file.
    """

    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read spec file {path}") from exc
    if not isinstance(payload, dict):
        raise ConfigError(f"{path}: spec must be a JSON object")
    if kind is not None:
        declared = payload.setdefault("kind", kind.value)
        if declared != kind.value:
            raise ConfigError(f"{path}: spec is for '{declared}', command runs '{kind.value}'")
    return ExperimentSpec.model_validate(_anchor_paths(payload, path.parent))


def resolve_spec(
    kind: ExperimentKind,
    *,
    spec_file: Path | None = None,
    full: bool = False,
    overrides: Optional[Mapping[str, Any]] = None,
    presets: Path | None = None,
) -> ExperimentSpec:
    """Spec file if given, otherwise the desk/full preset, with non-None ``overrides`` applied."""

    spec = load_spec_file(spec_file, kind) if spec_file is not None else load_presets(presets).get(kind, full=full)
    updates = {key: value for key, value in (overrides or {}).items() if value is not None}
    if not updates:
        return spec
    return ExperimentSpec.model_validate({**spec.model_dump(), **updates})


__all__ = [
    "DEFAULT_PRESETS",
    "PATH_FIELDS",
    "PRESETS_ENV",
    "ExperimentPresets",
    "load_presets",
    "load_spec_file",
    "presets_path",
    "resolve_spec",
]
