"""Dictionary type and atom normalization."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from app.packages.base.errors import ZeroAtomError
from app.packages.numerics.linalg import as_matrix


def _frozen_copy(a: np.ndarray) -> np.ndarray:
    copy = np.array(a, dtype=np.float64, copy=True)
    copy.setflags(write=False)
    return copy


@dataclass(frozen=True)
class Dictionary:
    """``m x l`` matrix whose columns (atoms) are all nonzero."""

    atoms: np.ndarray

    def __post_init__(self) -> None:
        atoms = as_matrix(self.atoms, "atoms")
        norms = np.linalg.norm(atoms, axis=0)
        zero = np.flatnonzero(norms == 0.0)
        if zero.size:
            raise ZeroAtomError(int(zero[0]))
        object.__setattr__(self, "atoms", _frozen_copy(atoms))

    @property
    def m(self) -> int:
        return self.atoms.shape[0]

    @property
    def l(self) -> int:  # noqa: E743
        return self.atoms.shape[1]

    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.atoms, axis=0)

    def is_normalized(self, atol: float = 1e-8) -> bool:
        return bool(np.all(np.abs(self.norms() - 1.0) <= atol))


def normalize(d: Dictionary) -> tuple[Dictionary, np.ndarray]:
    """Scale every atom to unit norm.

    Returns the normalized dictionary and the column norms ``s``; coefficients
    paired with ``d`` must be multiplied row-wise by ``s`` to keep ``D X``.
    """

    scaling = d.norms()
    return Dictionary(d.atoms / scaling), scaling


__all__ = ["Dictionary", "normalize"]
