"""Closed-form sample bounds over an ``(m, theta)`` grid."""

from __future__ import annotations

from typing import Any

from app.packages.base.pipeline import PipelineContext
from app.packages.bounds import compute_bounds
from app.packages.models_generated import ExperimentKind, ExperimentSpec

from .results import ExperimentResult, ResultRow
from .runner import ExperimentRunner, Trial


METHOD = "bounds"
BOUND_METRICS = ("n0", "n1", "n2", "n3", "n_star", "n_star_rounded", "asymptotic_threshold")


class BoundsTableRunner(ExperimentRunner):
    kind = ExperimentKind.BOUNDS_TABLE

    def grid(self, spec: ExperimentSpec) -> list[dict[str, Any]]:
        return [{"m": m, "theta": theta} for m in spec.m for theta in spec.theta]

    def trial_count(self, spec: ExperimentSpec) -> int:
        return 1

    def run_trial(self, context: PipelineContext[ExperimentSpec], trial: Trial) -> list[ResultRow]:
        report = compute_bounds(trial.point["m"], trial.point["theta"], context.config.epsilon)
        return [trial.row(METHOD, metric, getattr(report, metric)) for metric in BOUND_METRICS]


def run_bounds_table(spec: ExperimentSpec) -> ExperimentResult:
    return BoundsTableRunner().execute(spec)


__all__ = ["BOUND_METRICS", "BoundsTableRunner", "run_bounds_table"]
