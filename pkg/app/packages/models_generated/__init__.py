"""Pydantic models for configurations, reports and experiment specs."""

from .bounds_model import BoundReport
from .experiment_model import ExperimentKind, ExperimentSpec
from .imaging_model import PatchConfig
from .learning_model import LearnConfig, OmpConfig, UpdateConfig, UpdateMethod
from .synth_model import GenConfig

__all__ = [
    "BoundReport",
    "ExperimentKind",
    "ExperimentSpec",
    "GenConfig",
    "LearnConfig",
    "OmpConfig",
    "PatchConfig",
    "UpdateConfig",
    "UpdateMethod",
]
