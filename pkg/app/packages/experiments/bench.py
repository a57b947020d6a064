"""Seconds per dictionary-update step for each method.

Values in this experiment are wall-clock timings, so its CSV is not
reproducible bit for bit; the grid, seed and iteration columns are.
"""

from __future__ import annotations

import logging
from typing import Any

import numpy as np

from app.packages.base.pipeline import PipelineContext
from app.packages.models_generated import ExperimentKind, ExperimentSpec, GenConfig
from app.packages.synth import gen_training_set
from app.packages.update import learn

from .results import ExperimentResult, ResultRow, summary_rows
from .runner import ExperimentRunner, Trial, check_stls_cap, learn_config, update_config


logger = logging.getLogger(__name__)


class RuntimeBenchRunner(ExperimentRunner):
    kind = ExperimentKind.RUNTIME_BENCH

    def grid(self, spec: ExperimentSpec) -> list[dict[str, Any]]:
        return [
            {"m": m, "l": l, "n": n, "theta": theta}
            for m in spec.m
            for l in spec.atom_counts(m)  # noqa: E741
            for n in spec.n
            for theta in spec.theta
        ]

    def prepare(self, context: PipelineContext[ExperimentSpec]) -> None:
        spec = context.config
        check_stls_cap(spec)
        if spec.threads > 1:
            logger.warning("Runtime bench on %d threads; timings include contention", spec.threads)

    def run_trial(self, context: PipelineContext[ExperimentSpec], trial: Trial) -> list[ResultRow]:
        spec = context.config
        point = trial.point
        training = gen_training_set(
            GenConfig(m=point["m"], l=point["l"], n=point["n"], theta=point["theta"], seed=trial.seed)
        )
        rows = []
        for method in spec.methods:
            cfg = learn_config(spec, update_config(spec, method), theta=point["theta"], l=point["l"], seed=trial.seed)
            result = learn(training.samples, cfg)
            rows.extend(
                trial.row(
                    method.label,
                    "update_seconds",
                    record.update_seconds,
                    iteration=record.iteration,
                    seconds=record.seconds,
                )
                for record in result.history
            )
        return rows

    def summarize(self, context: PipelineContext[ExperimentSpec], rows: list[ResultRow]) -> list[ResultRow]:
        return summary_rows(rows, "update_seconds", "mean_update_seconds", np.mean)


def run_runtime_bench(spec: ExperimentSpec) -> ExperimentResult:
    return RuntimeBenchRunner().execute(spec)


__all__ = ["RuntimeBenchRunner", "run_runtime_bench"]
