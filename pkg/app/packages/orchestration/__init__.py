"""Experiment preset and spec loading."""

from .config_loader import (
    DEFAULT_PRESETS,
    PRESETS_ENV,
    ExperimentPresets,
    load_presets,
    load_spec_file,
    presets_path,
    resolve_spec,
)

__all__ = [
    "DEFAULT_PRESETS",
    "PRESETS_ENV",
    "ExperimentPresets",
    "load_presets",
    "load_spec_file",
    "presets_path",
    "resolve_spec",
]
