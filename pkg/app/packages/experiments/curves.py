"""Learning curves: method comparison and BLOTLESS block-size sweep."""

from __future__ import annotations

import logging
from typing import Any

import numpy as np

from app.packages.base.errors import ConfigError
from app.packages.base.pipeline import PipelineContext
from app.packages.models_generated import ExperimentKind, ExperimentSpec, GenConfig, UpdateMethod
from app.packages.synth import gen_training_set
from app.packages.update import LearnResult, learn

from .results import ExperimentResult, ResultRow, summary_rows
from .runner import ExperimentRunner, Trial, check_stls_cap, learn_config, update_config


logger = logging.getLogger(__name__)


def history_rows(trial: Trial, label: str, result: LearnResult) -> list[ResultRow]:
    rows = []
    for record in result.history:
        if record.r_err is not None:
            rows.append(trial.row(label, "r_err", record.r_err, iteration=record.iteration, seconds=record.seconds))
        rows.append(trial.row(label, "objective", record.objective, iteration=record.iteration, seconds=record.seconds))
    return rows


def curve_summaries(rows: list[ResultRow], n_iterations: int) -> list[ResultRow]:
    final = [row for row in rows if row.iteration == n_iterations]
    return summary_rows(rows, "r_err", "mean_r_err", np.mean, by_iteration=True) + summary_rows(
        final, "r_err", "median_final_r_err", np.median
    )


class _CurveRunner(ExperimentRunner):
    def grid(self, spec: ExperimentSpec) -> list[dict[str, Any]]:
        return [
            {"m": m, "l": l, "n": n, "theta": theta, "snr_db": snr_db}
            for m in spec.m
            for l in spec.atom_counts(m)  # noqa: E741
            for n in spec.n
            for theta in spec.theta
            for snr_db in spec.snr_db
        ]

    def series(self, spec: ExperimentSpec) -> list[tuple[str, UpdateMethod, Any]]:
        """``(label, method, block_size)`` for every learning run made on a trial's data."""

        raise NotImplementedError

    def run_trial(self, context: PipelineContext[ExperimentSpec], trial: Trial) -> list[ResultRow]:
        spec = context.config
        point = trial.point
        training = gen_training_set(
            GenConfig(m=point["m"], l=point["l"], n=point["n"], theta=point["theta"], seed=trial.seed, snr_db=point["snr_db"])
        )
        d0, _ = training.ground_truth
        rows: list[ResultRow] = []
        for label, method, block_size in self.series(spec):
            cfg = learn_config(
                spec,
                update_config(spec, method, block_size),
                theta=point["theta"],
                l=point["l"],
                seed=trial.seed,
            )
            result = learn(training.samples, cfg, ground_truth=d0)
            logger.debug("%s trial %d at %s: final r_err %.3e", label, trial.trial, trial.grid, result.final_r_err)
            rows.extend(history_rows(trial, label, result))
        return rows

    def summarize(self, context: PipelineContext[ExperimentSpec], rows: list[ResultRow]) -> list[ResultRow]:
        return curve_summaries(rows, context.config.n_iterations)


class LearnCurveRunner(_CurveRunner):
    kind = ExperimentKind.LEARN_CURVE

    def prepare(self, context: PipelineContext[ExperimentSpec]) -> None:
        check_stls_cap(context.config)

    def series(self, spec: ExperimentSpec) -> list[tuple[str, UpdateMethod, Any]]:
        return [(method.label, method, None) for method in spec.methods]


class BlockSizeSweepRunner(_CurveRunner):
    """One BLOTLESS series per block size, plus K-SVD as the reference curve."""

    kind = ExperimentKind.BLOCK_SIZE_SWEEP

    def prepare(self, context: PipelineContext[ExperimentSpec]) -> None:
        spec = context.config
        too_large = [(b, m) for b in spec.block_sizes for m in spec.m if b > m]
        if too_large:
            block_size, m = too_large[0]
            raise ConfigError(f"block size {block_size} exceeds m={m}; blocks must not be overcomplete")
        check_stls_cap(spec)

    def series(self, spec: ExperimentSpec) -> list[tuple[str, UpdateMethod, Any]]:
        method = next((method for method in spec.methods if method.is_blotless), UpdateMethod.BLOTLESS_ITERTLS)
        sweep = [(f"BLOTLESS-b{size}", method, size) for size in spec.block_sizes]
        return sweep + [(UpdateMethod.KSVD.label, UpdateMethod.KSVD, None)]


def run_learn_curve(spec: ExperimentSpec) -> ExperimentResult:
    """Recovery error per learning iteration for every method on shared seeded data."""

    return LearnCurveRunner().execute(spec)


def run_block_size_sweep(spec: ExperimentSpec) -> ExperimentResult:
    return BlockSizeSweepRunner().execute(spec)


__all__ = [
    "BlockSizeSweepRunner",
    "LearnCurveRunner",
    "curve_summaries",
    "history_rows",
    "run_block_size_sweep",
    "run_learn_curve",
]
