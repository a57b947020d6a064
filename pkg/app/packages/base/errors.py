"""Exception hierarchy shared by every BLOTLESS package.

Two families matter to callers: ``ConfigError`` for inputs that violate a
contract (CLI exit code 1) and ``NumericalFailureError`` for solvers that
cannot produce a trustworthy answer (CLI exit code 2).
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np


class BlotlessError(RuntimeError):
    """Root of all library errors."""


class ConfigError(BlotlessError, ValueError):
    """Raised when arguments or configuration violate an operation's contract."""


class DimensionMismatchError(ConfigError):
    """Raised when matrix shapes are incompatible."""


class RankOutOfRangeError(ConfigError):
    """Raised when a requested rank exceeds the matrix dimensions."""


class ZeroAtomError(ConfigError):
    """Raised when a dictionary atom is the zero vector."""

    def __init__(self, atom_index: int, message: Optional[str] = None) -> None:
        self.atom_index = atom_index
        super().__init__(message or f"Dictionary atom {atom_index} is the zero vector")


class NotNormalizedError(ConfigError):
    """Raised when an operation requires unit-norm atoms."""


class InsufficientComplementError(ConfigError):
    """Raised when a pattern has too few off-support slots to corrupt."""


class SizeCapExceededError(ConfigError):
    """Raised when an instance is too large for the structured TLS solver."""


class NumericalFailureError(BlotlessError):
    """Raised when a numerical kernel or solver breaks down."""


class SvdConvergenceError(NumericalFailureError):
    """Raised when LAPACK fails to converge on an SVD."""


class DegenerateConstraintError(NumericalFailureError):
    """Raised when an equality-constrained QP has rank-deficient constraints."""


class DegenerateDataError(NumericalFailureError):
    """Raised when the data cannot support the requested rank or inverse."""


class DegenerateSignalError(NumericalFailureError):
    """Raised when noise is requested for an all-zero signal."""


class AmbiguousRowError(NumericalFailureError):
    """Raised when a row subproblem admits more than the one-dimensional scaling family."""

    def __init__(self, row: int, rank: int, unknowns: int) -> None:
        self.row = row
        self.rank = rank
        self.unknowns = unknowns
        super().__init__(
            f"Row {row} system has rank {rank} < {unknowns} unknowns; recovery is not unique"
        )


class ScalingDegenerateError(NumericalFailureError):
    """Raised when a TLS row solution cannot be rescaled."""

    def __init__(self, row: int, message: str) -> None:
        self.row = row
        super().__init__(f"Row {row}: {message}")


class OmpBreakdownError(NumericalFailureError):
    """Raised when OMP re-selects an atom; carries the partial result."""

    def __init__(
        self,
        message: str,
        *,
        support: Sequence[int] = (),
        coeffs: Optional[np.ndarray] = None,
        column: Optional[int] = None,
    ) -> None:
        self.support = tuple(support)
        self.coeffs = np.zeros(0) if coeffs is None else np.asarray(coeffs)
        self.column = column
        prefix = f"column {column}: " if column is not None else ""
        super().__init__(prefix + message)


class BlockUpdateError(NumericalFailureError):
    """Raised when the update of one dictionary block fails."""

    def __init__(self, block: int, atoms: Sequence[int], message: str) -> None:
        self.block = block
        self.atoms = tuple(atoms)
        span = f"{self.atoms[0]}..{self.atoms[-1]}" if self.atoms else "none"
        super().__init__(f"Block {block} (atoms {span}): {message}")


__all__ = [
    "AmbiguousRowError",
    "BlockUpdateError",
    "BlotlessError",
    "ConfigError",
    "DegenerateConstraintError",
    "DegenerateDataError",
    "DegenerateSignalError",
    "DimensionMismatchError",
    "InsufficientComplementError",
    "NotNormalizedError",
    "NumericalFailureError",
    "OmpBreakdownError",
    "RankOutOfRangeError",
    "ScalingDegenerateError",
    "SizeCapExceededError",
    "SvdConvergenceError",
    "ZeroAtomError",
]
