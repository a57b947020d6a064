"""Dense matrix text format shared by every exported artifact.

First line ``rows cols``, then ``rows`` lines of ``cols`` space-separated
floats written with 17 significant digits so values round-trip exactly.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from app.packages.base.errors import ConfigError, DimensionMismatchError
from app.packages.numerics.linalg import as_matrix


def write_matrix(path: str | Path, a: np.ndarray) -> Path:
    matrix = as_matrix(a)
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    rows, cols = matrix.shape
    with target.open("w", encoding="utf-8") as handle:
        handle.write(f"{rows} {cols}\n")
        if matrix.size:
            np.savetxt(handle, matrix, fmt="%.17g", delimiter=" ")
    return target


def read_matrix(path: str | Path) -> np.ndarray:
    source = Path(path)
    try:
        with source.open("r", encoding="utf-8") as handle:
            header = handle.readline().split()
            if len(header) != 2:
                raise ConfigError(f"{source}: first line must be 'rows cols'")
            rows, cols = (int(token) for token in header)
            if rows * cols == 0:
                return np.zeros((rows, cols))
            data = np.loadtxt(handle, dtype=np.float64, ndmin=2)
    except ConfigError:
        raise
    except (OSError, ValueError) as exc:
        raise ConfigError(f"{source}: unreadable matrix file") from exc
    if data.shape != (rows, cols):
        raise DimensionMismatchError(f"{source}: header says {rows}x{cols}, body is {data.shape[0]}x{data.shape[1]}")
    return as_matrix(data, str(source))


__all__ = ["read_matrix", "write_matrix"]
