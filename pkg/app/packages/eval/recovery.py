"""Dictionary recovery error with greedy atom matching."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from app.packages.base.errors import DimensionMismatchError
from app.packages.model import Dictionary


@dataclass(frozen=True)
class RecoveryError:
    """``r_err`` plus ``matching[p]``: the ground-truth atom paired with estimated atom ``p``."""

    r_err: float
    matching: tuple[int, ...]


def recovery_error(d_hat: Dictionary, d0: Dictionary) -> RecoveryError:
    """Mean of ``1 - |<d_hat_p, d0_jp>|`` over estimated atoms matched greedily in index order.

    Both dictionaries are column-normalized first, so the value ignores atom
    sign, permutation and positive scaling. Ties go to the lowest ground-truth index.
    """

    if d_hat.atoms.shape != d0.atoms.shape:
        raise DimensionMismatchError(f"dictionaries differ in shape: {d_hat.atoms.shape} vs {d0.atoms.shape}")
    estimated = d_hat.atoms / d_hat.norms()
    truth = d0.atoms / d0.norms()
    similarity = np.abs(estimated.T @ truth)
    available = np.ones(d0.l, dtype=bool)
    matching: list[int] = []
    total = 0.0
    for p in range(d_hat.l):
        candidates = np.where(available, similarity[p], -np.inf)
        j = int(np.argmax(candidates))
        available[j] = False
        matching.append(j)
        total += 1.0 - min(1.0, float(similarity[p, j]))
    return RecoveryError(r_err=total / d_hat.l, matching=tuple(matching))


def is_exact_recovery(d_hat: Dictionary, d0: Dictionary, tol: float = 1e-6) -> bool:
    return recovery_error(d_hat, d0).r_err <= tol


__all__ = ["RecoveryError", "is_exact_recovery", "recovery_error"]
