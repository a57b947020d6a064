"""Alternating sparse coding and dictionary update."""

from __future__ import annotations

import csv
import logging
import math
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from app.packages.base.errors import NumericalFailureError
from app.packages.coding import omp_encode_all
from app.packages.eval import recovery_error
from app.packages.model import Dictionary, SparseCoeffs, SupportPattern, normalize
from app.packages.models_generated import LearnConfig, UpdateConfig, UpdateMethod
from app.packages.numerics import as_matrix
from app.packages.synth import stream

from .atoms import replace_dead_atoms
from .blotless import blotless_block_update
from .ksvd import ksvd_update
from .mod import mod_update


logger = logging.getLogger(__name__)

HISTORY_FIELDS = ("iteration", "objective", "r_err", "seconds")

# Atoms this coherent are treated as duplicates when a round fails.
COHERENCE_LIMIT = 0.99


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    objective: float
    r_err: Optional[float]
    seconds: float
    update_seconds: float
    status: str = "ok"


@dataclass(frozen=True)
class LearnResult:
    """Best iterate by objective together with the full per-iteration history."""

    dictionary: Dictionary
    coeffs: SparseCoeffs
    history: list[IterationRecord] = field(default_factory=list)
    best_iteration: int = 0

    @property
    def final_r_err(self) -> Optional[float]:
        return self.history[-1].r_err if self.history else None


def random_dictionary(m: int, l: int, seed: int) -> Dictionary:  # noqa: E741
    """Normalized dictionary with i.i.d. N(0, 1/m) entries, drawn from the ``learn-init`` stream."""

    atoms = stream(seed, "learn-init").standard_normal((m, l)) / math.sqrt(m)
    return normalize(Dictionary(atoms))[0]


def update_dictionary(
    y: np.ndarray, d: Dictionary, x: SparseCoeffs, cfg: UpdateConfig
) -> tuple[Dictionary, SparseCoeffs]:
    """Run the configured update method and return unit-norm atoms with matching coefficients."""

    if cfg.method is UpdateMethod.MOD:
        updated = mod_update(y, x)
        normalized, scaling = normalize(updated)
        return normalized, x.scale_rows(scaling)
    if cfg.method is UpdateMethod.KSVD:
        updated, coeffs = ksvd_update(y, d, x)
        normalized, scaling = normalize(updated)
        return normalized, coeffs.scale_rows(scaling)
    return blotless_block_update(y, d, x, cfg)


def _objective(y: np.ndarray, d: Dictionary, x: SparseCoeffs) -> float:
    return float(np.linalg.norm(y - d.atoms @ x.values))


def stale_atoms(d: Dictionary, x: SparseCoeffs) -> list[int]:
    """Atoms to re-seed after a failed round: unused, near-duplicate, or else the least used one."""

    usage = x.pattern.mask().sum(axis=1)
    stale = set(np.flatnonzero(usage == 0).tolist())
    gram = np.triu(np.abs(d.atoms.T @ d.atoms), k=1)
    for i, j in zip(*np.nonzero(gram > COHERENCE_LIMIT)):
        stale.add(int(j) if usage[j] <= usage[i] else int(i))
    if not stale:
        stale.add(int(np.argmin(usage)))
    return sorted(stale)


def reseed_after_failure(
    y: np.ndarray, d: Dictionary, x: SparseCoeffs
) -> tuple[Dictionary, SparseCoeffs]:
    """Replace the stale atoms of ``d`` so the next round does not repeat the failure."""

    targets = stale_atoms(d, x)
    atoms, coeffs, pattern = replace_dead_atoms(d.atoms, y, x.values, x.pattern, targets)
    logger.info("Re-seeding atoms %s after a failed round", targets)
    normalized, scaling = normalize(Dictionary(atoms))
    return normalized, SparseCoeffs(coeffs, pattern).scale_rows(scaling)


def learn(
    y: np.ndarray,
    cfg: LearnConfig,
    *,
    ground_truth: Optional[Dictionary] = None,
    initial: Optional[Dictionary] = None,
) -> LearnResult:
    """Alternate OMP coding and dictionary update for ``cfg.n_iterations`` rounds.

    A failing round is logged and recorded with its status; the previous
    iterate is kept for that round and its stale atoms are re-seeded before
    the next one. The returned model is the best iterate seen.
    """

    samples = as_matrix(y, "y")
    m, n = samples.shape
    d = initial if initial is not None else random_dictionary(m, cfg.n_atoms, cfg.seed)
    if not d.is_normalized():
        d = normalize(d)[0]
    x = SparseCoeffs.zeros(SupportPattern.empty(d.l, n))

    history: list[IterationRecord] = []
    best: tuple[float, int, Dictionary, SparseCoeffs] = (_objective(samples, d, x), 0, d, x)
    for iteration in range(1, cfg.n_iterations + 1):
        started = time.perf_counter()
        update_seconds = 0.0
        status = "ok"
        restart: Optional[tuple[Dictionary, SparseCoeffs]] = None
        coded = x
        try:
            coded = omp_encode_all(d, samples, cfg.omp)
            update_started = time.perf_counter()
            d_next, x_next = update_dictionary(samples, d, coded, cfg.update)
            update_seconds = time.perf_counter() - update_started
            d, x = d_next, x_next
        except NumericalFailureError as exc:
            status = f"failed: {type(exc).__name__}"
            logger.warning("Iteration %d (%s) failed, keeping previous iterate: %s", iteration, cfg.update.method.label, exc)
            restart = reseed_after_failure(samples, d, coded)
        seconds = time.perf_counter() - started
        objective = _objective(samples, d, x)
        r_err = recovery_error(d, ground_truth).r_err if ground_truth is not None else None
        history.append(
            IterationRecord(
                iteration=iteration,
                objective=objective,
                r_err=r_err,
                seconds=seconds,
                update_seconds=update_seconds,
                status=status,
            )
        )
        logger.debug(
            "%s iteration %d: objective %.6e r_err %s (%.3fs)",
            cfg.update.method.label, iteration, objective, r_err, seconds,
        )
        if objective < best[0]:
            best = (objective, iteration, d, x)
        if restart is not None:
            d, x = restart

    _, best_iteration, best_d, best_x = best
    logger.info(
        "%s finished %d iterations; best objective %.6e at iteration %d",
        cfg.update.method.label, cfg.n_iterations, best[0], best_iteration,
    )
    return LearnResult(dictionary=best_d, coeffs=best_x, history=history, best_iteration=best_iteration)


def write_history_csv(path: str | Path, history: Sequence[IterationRecord]) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with target.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=HISTORY_FIELDS)
        writer.writeheader()
        for record in history:
            writer.writerow(
                {
                    "iteration": record.iteration,
                    "objective": repr(record.objective),
                    "r_err": "" if record.r_err is None else repr(record.r_err),
                    "seconds": f"{record.seconds:.6f}",
                }
            )
    return target


__all__ = [
    "HISTORY_FIELDS",
    "IterationRecord",
    "LearnResult",
    "learn",
    "random_dictionary",
    "reseed_after_failure",
    "stale_atoms",
    "update_dictionary",
    "write_history_csv",
]
