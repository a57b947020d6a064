"""Shared trial scheduling for every experiment kind."""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass
from typing import Any, ClassVar, Mapping, Optional

from app.packages.base.errors import ConfigError, SizeCapExceededError
from app.packages.base.pipeline import PipelineContext, PipelineStep
from app.packages.bounds import round_half_away
from app.packages.models_generated import (
    ExperimentKind,
    ExperimentSpec,
    LearnConfig,
    OmpConfig,
    UpdateConfig,
    UpdateMethod,
)
from app.packages.synth import derive_seed
from app.packages.worker import run_trials_blocking

from .results import ExperimentResult, ResultRow, format_grid


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Trial:
    """One seeded repetition at one grid point; ``seed`` alone regenerates its data."""

    grid_index: int
    point: Mapping[str, Any]
    trial: int
    seed: int

    @property
    def grid(self) -> str:
        return format_grid(self.point)

    def row(
        self,
        method: str,
        metric: str,
        value: float,
        *,
        iteration: int = 0,
        seconds: float = 0.0,
    ) -> ResultRow:
        return ResultRow(
            grid_index=self.grid_index,
            grid=self.grid,
            trial=self.trial,
            seed=self.seed,
            method=method,
            iteration=iteration,
            metric=metric,
            value=float(value),
            seconds=seconds,
        )


class ExperimentRunner(PipelineStep[ExperimentSpec, None, list[ResultRow], ExperimentResult]):
    """Expand a spec into seeded trials, run them on the trial pool and collect rows.

    Subclasses provide ``grid`` and ``run_trial``; ``prepare`` and ``summarize``
    are optional hooks around the fan-out.
    """

    kind: ClassVar[ExperimentKind]

    def grid(self, spec: ExperimentSpec) -> list[dict[str, Any]]:
        raise NotImplementedError

    def trial_count(self, spec: ExperimentSpec) -> int:
        return spec.trials

    def prepare(self, context: PipelineContext[ExperimentSpec]) -> None:
        """Validate the spec and stash shared state in ``context.params`` before trials start."""

    def run_trial(self, context: PipelineContext[ExperimentSpec], trial: Trial) -> list[ResultRow]:
        raise NotImplementedError

    def summarize(self, context: PipelineContext[ExperimentSpec], rows: list[ResultRow]) -> list[ResultRow]:
        return []

    def trials(self, spec: ExperimentSpec) -> list[Trial]:
        return [
            Trial(grid_index=index, point=point, trial=t, seed=derive_seed(spec.base_seed, index, t))
            for index, point in enumerate(self.grid(spec))
            for t in range(self.trial_count(spec))
        ]

    def process(self, context: PipelineContext[ExperimentSpec], input_data: None) -> list[ResultRow]:
        spec = context.config
        if spec.kind is not self.kind:
            raise ConfigError(f"{type(self).__name__} runs {self.kind.value}, got a {spec.kind.value} spec")
        self.prepare(context)
        trials = self.trials(spec)
        logger.info("%s: %d trials on %d thread(s)", self.kind.value, len(trials), spec.threads)
        worker = functools.partial(self.run_trial, context)
        per_trial = run_trials_blocking(trials, worker, threads=spec.threads)
        rows = [row for trial_rows in per_trial for row in trial_rows]
        return rows + self.summarize(context, rows)

    def after_process(
        self, context: PipelineContext[ExperimentSpec], processed: list[ResultRow]
    ) -> Optional[ExperimentResult]:
        return ExperimentResult(kind=self.kind, rows=tuple(processed))

    def execute(self, spec: ExperimentSpec) -> ExperimentResult:
        return self.run(job_id=self.kind.value, config=spec, input_data=None)


def omp_sparsity(spec: ExperimentSpec, theta: float, l: int) -> int:  # noqa: E741
    """Configured OMP ``k`` or the expected nonzeros per column, ``round(theta * l)``, at least one."""

    if spec.omp_k is not None:
        return spec.omp_k
    return max(1, round_half_away(theta * l))


def update_config(spec: ExperimentSpec, method: UpdateMethod, block_size: Optional[int] = None) -> UpdateConfig:
    return UpdateConfig(
        method=method,
        iter_tls_max_iters=spec.iter_tls_max_iters,
        stls_max_iters=spec.stls_max_iters,
        stls_size_cap=spec.stls_size_cap,
        block_size=block_size,
    )


def learn_config(
    spec: ExperimentSpec,
    update: UpdateConfig,
    *,
    theta: float,
    l: int,  # noqa: E741
    seed: int,
) -> LearnConfig:
    return LearnConfig(
        update=update,
        omp=OmpConfig(k=omp_sparsity(spec, theta, l)),
        n_atoms=l,
        n_iterations=spec.n_iterations,
        seed=seed,
    )


def check_stls_cap(spec: ExperimentSpec) -> None:
    """Reject grids whose STLS block solves would exceed ``stls_size_cap`` before any trial runs."""

    if UpdateMethod.BLOTLESS_STLS not in spec.methods:
        return
    for m in spec.m:
        for n in spec.n:
            if m * n > spec.stls_size_cap:
                raise SizeCapExceededError(
                    f"BLOTLESS-STLS at m={m}, n={n} needs m*n={m * n} > stls_size_cap={spec.stls_size_cap}"
                )


__all__ = [
    "ExperimentRunner",
    "Trial",
    "check_stls_cap",
    "learn_config",
    "omp_sparsity",
    "update_config",
]
