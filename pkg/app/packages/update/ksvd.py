"""K-SVD: sequential rank-one refits of each atom and its coefficient row."""

from __future__ import annotations

import logging

import numpy as np

from app.packages.base.errors import DimensionMismatchError
from app.packages.model import Dictionary, SparseCoeffs
from app.packages.numerics import as_matrix, svd

from .atoms import replace_dead_atoms


logger = logging.getLogger(__name__)


def ksvd_update(y: np.ndarray, d: Dictionary, x: SparseCoeffs) -> tuple[Dictionary, SparseCoeffs]:
    """Sweep atoms in index order, replacing ``(d_i, x_{i, Omega_i})`` by the top singular triplet
    of the residual restricted to ``Omega_i``. Signs follow the SVD."""

    samples = as_matrix(y, "y")
    if d.m != samples.shape[0] or x.values.shape != (d.l, samples.shape[1]):
        raise DimensionMismatchError(
            f"Y {samples.shape}, D {d.atoms.shape} and X {x.values.shape} are inconsistent"
        )
    atoms = np.array(d.atoms)
    coeffs = np.array(x.values)
    residual = samples - atoms @ coeffs
    dead: list[int] = []
    for i, support in enumerate(x.pattern.rows):
        if not support:
            dead.append(i)
            continue
        columns = list(support)
        restricted = residual[:, columns] + np.outer(atoms[:, i], coeffs[i, columns])
        factors = svd(restricted)
        sigma = float(factors.s[0])
        if sigma == 0.0:
            dead.append(i)
            coeffs[i, columns] = 0.0
            residual[:, columns] = restricted
            continue
        atoms[:, i] = factors.u[:, 0]
        coeffs[i, columns] = sigma * factors.vt[0]
        residual[:, columns] = restricted - np.outer(atoms[:, i], coeffs[i, columns])
    if dead:
        logger.debug("K-SVD found %d unused atoms", len(dead))
    atoms, coeffs, pattern = replace_dead_atoms(atoms, samples, coeffs, x.pattern, dead)
    return Dictionary(atoms), SparseCoeffs(coeffs, pattern)


__all__ = ["ksvd_update"]
