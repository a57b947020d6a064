"""Experiment result rows and their canonical CSV form."""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Mapping, Optional

import numpy as np

from app.packages.models_generated import ExperimentKind


logger = logging.getLogger(__name__)

RESULT_FIELDS = ("kind", "grid_index", "grid", "trial", "seed", "method", "iteration", "metric", "value", "seconds")

SUMMARY_TRIAL = -1


def format_grid(point: Mapping[str, Any]) -> str:
    """``m=30;theta=0.2;n=65``; ``None`` values print as ``inf`` (noise-free SNR)."""

    parts = []
    for key, value in point.items():
        if value is None:
            value = "inf"
        parts.append(f"{key}={value}")
    return ";".join(parts)


def _format_value(value: float) -> str:
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return repr(float(value))


@dataclass(frozen=True)
class ResultRow:
    """One recorded measurement. Summary rows carry ``trial == -1``."""

    grid_index: int
    grid: str
    trial: int
    seed: int
    method: str
    iteration: int
    metric: str
    value: float
    seconds: float = 0.0

    @property
    def sort_key(self) -> tuple[int, str, int, int, str]:
        return (self.grid_index, self.method, self.trial, self.iteration, self.metric)


@dataclass(frozen=True)
class ExperimentResult:
    kind: ExperimentKind
    rows: tuple[ResultRow, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(sorted(self.rows, key=lambda row: row.sort_key)))

    def select(
        self,
        metric: str,
        *,
        method: Optional[str] = None,
        grid_index: Optional[int] = None,
        summary: bool = False,
    ) -> list[ResultRow]:
        """Rows for ``metric``, optionally narrowed to one method and grid point.

        Per-trial rows by default; ``summary=True`` returns the aggregate rows instead.
        """

        return [
            row
            for row in self.rows
            if row.metric == metric
            and (method is None or row.method == method)
            and (grid_index is None or row.grid_index == grid_index)
            and (row.trial == SUMMARY_TRIAL) == summary
        ]

    def values(self, metric: str, **filters: Any) -> np.ndarray:
        return np.array([row.value for row in self.select(metric, **filters)], dtype=np.float64)

    def methods(self) -> list[str]:
        return sorted({row.method for row in self.rows})

    def write_csv(self, path: str | Path, *, include_timing: bool = True) -> Path:
        """Write rows in canonical order; without timing the file is bitwise reproducible."""

        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        with target.open("w", encoding="utf-8", newline="") as handle:
            writer = csv.DictWriter(handle, fieldnames=RESULT_FIELDS, lineterminator="\n")
            writer.writeheader()
            for row in self.rows:
                writer.writerow(
                    {
                        "kind": self.kind.value,
                        "grid_index": row.grid_index,
                        "grid": row.grid,
                        "trial": row.trial,
                        "seed": row.seed,
                        "method": row.method,
                        "iteration": row.iteration,
                        "metric": row.metric,
                        "value": _format_value(row.value),
                        "seconds": f"{row.seconds:.6f}" if include_timing else "",
                    }
                )
        logger.info("Wrote %d %s rows to %s", len(self.rows), self.kind.value, target)
        return target


def summary_rows(
    rows: Iterable[ResultRow],
    metric: str,
    name: str,
    reducer: Any,
    *,
    by_iteration: bool = False,
) -> list[ResultRow]:
    """Reduce per-trial ``metric`` rows over trials into ``name`` rows, one per grid point and method.

    NaN values (failed trials) are dropped before reducing; a group with no
    finite values reduces to NaN.
    """

    groups: dict[tuple[int, str, str, int], list[float]] = {}
    for row in rows:
        if row.metric != metric or row.trial == SUMMARY_TRIAL:
            continue
        iteration = row.iteration if by_iteration else 0
        groups.setdefault((row.grid_index, row.grid, row.method, iteration), []).append(row.value)
    summaries = []
    for (grid_index, grid, method, iteration), values in sorted(groups.items()):
        finite = np.array([v for v in values if not math.isnan(v)], dtype=np.float64)
        value = float(reducer(finite)) if finite.size else math.nan
        summaries.append(
            ResultRow(
                grid_index=grid_index,
                grid=grid,
                trial=SUMMARY_TRIAL,
                seed=0,
                method=method,
                iteration=iteration,
                metric=name,
                value=value,
            )
        )
    return summaries


__all__ = [
    "ExperimentResult",
    "RESULT_FIELDS",
    "ResultRow",
    "SUMMARY_TRIAL",
    "format_grid",
    "summary_rows",
]
