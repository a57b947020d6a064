"""Experiment runners producing canonical, seed-reproducible result tables."""

from typing import Callable

from app.packages.models_generated import ExperimentKind, ExperimentSpec

from .bench import RuntimeBenchRunner, run_runtime_bench
from .curves import BlockSizeSweepRunner, LearnCurveRunner, run_block_size_sweep, run_learn_curve
from .denoise import DenoiseRunner, run_denoise
from .phase import PhaseTransitionRunner, run_phase_transition
from .results import RESULT_FIELDS, SUMMARY_TRIAL, ExperimentResult, ResultRow, format_grid, summary_rows
from .robustness import PatternRobustnessRunner, run_pattern_robustness
from .runner import ExperimentRunner, Trial
from .tables import BoundsTableRunner, run_bounds_table

RUNNERS: dict[ExperimentKind, Callable[[ExperimentSpec], ExperimentResult]] = {
    ExperimentKind.PHASE_TRANSITION: run_phase_transition,
    ExperimentKind.LEARN_CURVE: run_learn_curve,
    ExperimentKind.PATTERN_ROBUSTNESS: run_pattern_robustness,
    ExperimentKind.BLOCK_SIZE_SWEEP: run_block_size_sweep,
    ExperimentKind.RUNTIME_BENCH: run_runtime_bench,
    ExperimentKind.BOUNDS_TABLE: run_bounds_table,
    ExperimentKind.DENOISE: run_denoise,
}


def run_experiment(spec: ExperimentSpec) -> ExperimentResult:
    return RUNNERS[spec.kind](spec)


__all__ = [
    "BlockSizeSweepRunner",
    "BoundsTableRunner",
    "DenoiseRunner",
    "ExperimentResult",
    "ExperimentRunner",
    "LearnCurveRunner",
    "PatternRobustnessRunner",
    "PhaseTransitionRunner",
    "RESULT_FIELDS",
    "RUNNERS",
    "ResultRow",
    "RuntimeBenchRunner",
    "SUMMARY_TRIAL",
    "Trial",
    "format_grid",
    "run_block_size_sweep",
    "run_bounds_table",
    "run_denoise",
    "run_experiment",
    "run_learn_curve",
    "run_pattern_robustness",
    "run_phase_transition",
    "run_runtime_bench",
    "summary_rows",
]
