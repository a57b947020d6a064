"""Method of optimal directions."""

from __future__ import annotations

import numpy as np

from app.packages.base.errors import DegenerateDataError, DimensionMismatchError
from app.packages.model import Dictionary, SparseCoeffs
from app.packages.numerics import as_matrix, pseudo_inverse

from .atoms import replace_dead_atoms


def mod_update(y: np.ndarray, x: SparseCoeffs) -> Dictionary:
    """``D = Y X^+``, the least-squares dictionary for fixed coefficients.

    Atoms whose coefficient row is zero come out as zero columns and are
    re-seeded from the worst-represented samples. Atoms are not normalized.
    """

    samples = as_matrix(y, "y")
    if samples.shape[1] != x.values.shape[1]:
        raise DimensionMismatchError(f"Y has {samples.shape[1]} columns, X has {x.values.shape[1]}")
    if not np.any(x.values):
        raise DegenerateDataError("MOD needs a nonzero coefficient matrix")
    atoms = samples @ pseudo_inverse(x.values)
    atoms, _, _ = replace_dead_atoms(atoms, samples, x.values, x.pattern)
    return Dictionary(atoms)


__all__ = ["mod_update"]
