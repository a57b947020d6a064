"""Dead-atom replacement shared by every update method."""

from __future__ import annotations

import logging
from typing import Iterable

import numpy as np

from app.packages.model import SupportPattern


logger = logging.getLogger(__name__)


def replace_dead_atoms(
    atoms: np.ndarray,
    y: np.ndarray,
    coeffs: np.ndarray,
    pattern: SupportPattern,
    dead: Iterable[int] = (),
) -> tuple[np.ndarray, np.ndarray, SupportPattern]:
    """Re-seed unused or zero atoms with the worst-represented training columns.

    ``dead`` lists atoms known to be unused; zero-norm columns of ``atoms`` are
    added automatically. Each replacement is the normalized training column with
    the largest current residual, each column used at most once. The matching
    coefficient and pattern rows are cleared.
    """

    atoms = np.array(atoms, dtype=np.float64, copy=True)
    coeffs = np.array(coeffs, dtype=np.float64, copy=True)
    targets = sorted(set(int(i) for i in dead) | set(np.flatnonzero(np.linalg.norm(atoms, axis=0) == 0.0).tolist()))
    if not targets:
        return atoms, coeffs, pattern
    coeffs[targets, :] = 0.0
    residual = y - atoms @ coeffs
    residual_norms = np.linalg.norm(residual, axis=0)
    sample_norms = np.linalg.norm(y, axis=0)
    order = [int(j) for j in np.argsort(-residual_norms, kind="stable") if sample_norms[j] > 0.0]
    m = atoms.shape[0]
    for slot, atom in enumerate(targets):
        if slot < len(order):
            column = order[slot]
            atoms[:, atom] = y[:, column] / sample_norms[column]
        else:
            atoms[:, atom] = 0.0
            atoms[atom % m, atom] = 1.0
    logger.debug("Replaced %d dead atoms: %s", len(targets), targets)
    return atoms, coeffs, pattern.with_rows_cleared(targets)


__all__ = ["replace_dead_atoms"]
