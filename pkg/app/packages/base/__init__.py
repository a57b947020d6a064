"""Base utilities shared across packages."""

from .errors import BlotlessError, ConfigError, NumericalFailureError
from .pipeline import PipelineContext, PipelineStep

__all__ = ["BlotlessError", "ConfigError", "NumericalFailureError", "PipelineContext", "PipelineStep"]
