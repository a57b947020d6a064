"""Single dictionary-update accuracy under a corrupted support pattern."""

from __future__ import annotations

import logging
import math
import time
from typing import Any

import numpy as np

from app.packages.base.errors import NumericalFailureError
from app.packages.base.pipeline import PipelineContext
from app.packages.eval import recovery_error
from app.packages.model import project_to_pattern
from app.packages.models_generated import ExperimentKind, ExperimentSpec, GenConfig
from app.packages.synth import corrupt_pattern, gen_training_set
from app.packages.update import random_dictionary, update_dictionary

from .results import ExperimentResult, ResultRow, summary_rows
from .runner import ExperimentRunner, Trial, check_stls_cap, update_config


logger = logging.getLogger(__name__)


class PatternRobustnessRunner(ExperimentRunner):
    """Every method gets one update call from a random dictionary and ``X0`` restricted to the corrupted pattern."""

    kind = ExperimentKind.PATTERN_ROBUSTNESS

    def grid(self, spec: ExperimentSpec) -> list[dict[str, Any]]:
        return [
            {"m": m, "l": l, "n": n, "theta": theta, "r": r}
            for m in spec.m
            for l in spec.atom_counts(m)  # noqa: E741
            for n in spec.n
            for theta in spec.theta
            for r in spec.r
        ]

    def prepare(self, context: PipelineContext[ExperimentSpec]) -> None:
        check_stls_cap(context.config)

    def run_trial(self, context: PipelineContext[ExperimentSpec], trial: Trial) -> list[ResultRow]:
        spec = context.config
        point = trial.point
        training = gen_training_set(
            GenConfig(m=point["m"], l=point["l"], n=point["n"], theta=point["theta"], seed=trial.seed)
        )
        d0, x0 = training.ground_truth
        corrupted = corrupt_pattern(x0.pattern, point["r"], trial.seed)
        x_init = project_to_pattern(x0.values, corrupted)
        d_init = random_dictionary(point["m"], point["l"], trial.seed)

        rows = []
        for method in spec.methods:
            started = time.perf_counter()
            try:
                d_hat, _ = update_dictionary(training.samples, d_init, x_init, update_config(spec, method))
                r_err = recovery_error(d_hat, d0).r_err
            except NumericalFailureError as exc:
                logger.warning("%s update failed at %s trial %d: %s", method.label, trial.grid, trial.trial, exc)
                r_err = math.nan
            rows.append(trial.row(method.label, "r_err", r_err, seconds=time.perf_counter() - started))
        return rows

    def summarize(self, context: PipelineContext[ExperimentSpec], rows: list[ResultRow]) -> list[ResultRow]:
        return summary_rows(rows, "r_err", "median_r_err", np.median)


def run_pattern_robustness(spec: ExperimentSpec) -> ExperimentResult:
    return PatternRobustnessRunner().execute(spec)


__all__ = ["PatternRobustnessRunner", "run_pattern_robustness"]
