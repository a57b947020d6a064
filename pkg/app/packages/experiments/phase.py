"""Exact-recovery phase transition of the least-squares BLOTLESS solve."""

from __future__ import annotations

import logging
import math
import time
from typing import Any

from app.packages.base.errors import NumericalFailureError
from app.packages.base.pipeline import PipelineContext
from app.packages.bounds import check_necessary_conditions, compute_bounds
from app.packages.eval import recovery_error
from app.packages.model import Dictionary
from app.packages.models_generated import ExperimentKind, ExperimentSpec, GenConfig, UpdateMethod
from app.packages.synth import gen_training_set
from app.packages.update import blotless_ls, dictionary_from_inverse

from .results import SUMMARY_TRIAL, ExperimentResult, ResultRow, format_grid, summary_rows
from .runner import ExperimentRunner, Trial


logger = logging.getLogger(__name__)

METHOD = UpdateMethod.BLOTLESS_LS.label
SUCCESS_TARGET = 0.99


class PhaseTransitionRunner(ExperimentRunner):
    kind = ExperimentKind.PHASE_TRANSITION

    def grid(self, spec: ExperimentSpec) -> list[dict[str, Any]]:
        return [{"m": m, "theta": theta, "n": n} for m in spec.m for theta in spec.theta for n in spec.n]

    def run_trial(self, context: PipelineContext[ExperimentSpec], trial: Trial) -> list[ResultRow]:
        spec = context.config
        m, theta, n = trial.point["m"], trial.point["theta"], trial.point["n"]
        training = gen_training_set(GenConfig(m=m, l=m, n=n, theta=theta, seed=trial.seed))
        d0, x0 = training.ground_truth
        started = time.perf_counter()
        try:
            h, _ = blotless_ls(training.samples, x0.pattern, strict=True)
            r_err = recovery_error(Dictionary(dictionary_from_inverse(h)), d0).r_err
        except NumericalFailureError as exc:
            logger.debug("Trial %d at %s not recovered: %s", trial.trial, trial.grid, exc)
            r_err = math.nan
        seconds = time.perf_counter() - started
        success = not math.isnan(r_err) and r_err <= spec.exact_tol
        conditions = check_necessary_conditions(x0.pattern, m)
        return [
            trial.row(METHOD, "success", 1.0 if success else 0.0, seconds=seconds),
            trial.row(METHOD, "r_err", r_err, seconds=seconds),
            trial.row(METHOD, "conditions_hold", 1.0 if conditions.all_hold else 0.0),
        ]

    def summarize(self, context: PipelineContext[ExperimentSpec], rows: list[ResultRow]) -> list[ResultRow]:
        spec = context.config
        rates = summary_rows(rows, "success", "success_rate", lambda v: v.mean())
        summaries = rates + summary_rows(rows, "conditions_hold", "conditions_rate", lambda v: v.mean())

        points = self.grid(spec)
        first_index: dict[tuple[int, float], int] = {}
        by_curve: dict[tuple[int, float], list[tuple[int, float]]] = {}
        for rate in rates:
            point = points[rate.grid_index]
            key = (point["m"], point["theta"])
            first_index.setdefault(key, rate.grid_index)
            by_curve.setdefault(key, []).append((point["n"], rate.value))

        for (m, theta), curve in by_curve.items():
            label = format_grid({"m": m, "theta": theta})
            n_star = compute_bounds(m, theta, spec.epsilon).n_star
            reached = [n for n, rate in sorted(curve) if rate >= SUCCESS_TARGET]
            n_sim = float(reached[0]) if reached else math.nan
            logger.info("m=%d theta=%.3f: n_star %.1f, n_sim %s", m, theta, n_star, n_sim)
            for metric, value in (("n_star", n_star), ("n_sim", n_sim)):
                summaries.append(
                    ResultRow(
                        grid_index=first_index[(m, theta)],
                        grid=label,
                        trial=SUMMARY_TRIAL,
                        seed=0,
                        method=METHOD,
                        iteration=0,
                        metric=metric,
                        value=value,
                    )
                )
        return summaries


def run_phase_transition(spec: ExperimentSpec) -> ExperimentResult:
    """Success rate of exact recovery per ``(m, theta, n)``, with ``n_star`` and the empirical ``n_sim``."""

    return PhaseTransitionRunner().execute(spec)


__all__ = ["PhaseTransitionRunner", "run_phase_transition"]
