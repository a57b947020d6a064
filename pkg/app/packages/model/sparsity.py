"""Support patterns and sparse coefficient matrices."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from app.packages.base.errors import ConfigError, DimensionMismatchError
from app.packages.numerics.linalg import as_matrix


@dataclass(frozen=True)
class SupportPattern:
    """Index set Omega stored as one sorted index tuple per row."""

    l: int  # noqa: E741
    n: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.l < 0 or self.n < 0:
            raise ConfigError(f"pattern dimensions must be non-negative, got {self.l}x{self.n}")
        rows = tuple(tuple(int(j) for j in row) for row in self.rows)
        if len(rows) != self.l:
            raise DimensionMismatchError(f"pattern has {len(rows)} rows, expected {self.l}")
        for i, row in enumerate(rows):
            if any(b <= a for a, b in zip(row, row[1:])):
                raise ConfigError(f"row {i} support is not strictly increasing: {row}")
            if row and (row[0] < 0 or row[-1] >= self.n):
                raise ConfigError(f"row {i} support has indices outside [0, {self.n})")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_mask(cls, mask: np.ndarray) -> "SupportPattern":
        mask = np.asarray(mask, dtype=bool)
        if mask.ndim != 2:
            raise DimensionMismatchError(f"mask must be 2-D, got shape {mask.shape}")
        rows = tuple(tuple(int(j) for j in np.flatnonzero(row)) for row in mask)
        return cls(l=mask.shape[0], n=mask.shape[1], rows=rows)

    @classmethod
    def empty(cls, l: int, n: int) -> "SupportPattern":  # noqa: E741
        return cls(l=l, n=n, rows=tuple(() for _ in range(l)))

    @classmethod
    def full(cls, l: int, n: int) -> "SupportPattern":  # noqa: E741
        return cls(l=l, n=n, rows=tuple(tuple(range(n)) for _ in range(l)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.l, self.n)

    @property
    def size(self) -> int:
        return sum(len(row) for row in self.rows)

    def mask(self) -> np.ndarray:
        mask = np.zeros((self.l, self.n), dtype=bool)
        for i, row in enumerate(self.rows):
            mask[i, list(row)] = True
        return mask

    def complement(self, i: int) -> np.ndarray:
        """Omega_i^c within [n]."""

        keep = np.ones(self.n, dtype=bool)
        keep[list(self.rows[i])] = False
        return np.flatnonzero(keep)

    def empty_rows(self) -> list[int]:
        return [i for i, row in enumerate(self.rows) if not row]

    def select_rows(self, indices: Sequence[int]) -> "SupportPattern":
        return SupportPattern(l=len(indices), n=self.n, rows=tuple(self.rows[i] for i in indices))

    def with_rows_cleared(self, indices: Iterable[int]) -> "SupportPattern":
        cleared = set(indices)
        return SupportPattern(
            l=self.l,
            n=self.n,
            rows=tuple(() if i in cleared else row for i, row in enumerate(self.rows)),
        )

    def to_dict(self) -> dict[str, Any]:
        return {"l": self.l, "n": self.n, "rows": [list(row) for row in self.rows]}

    @classmethod
    def from_dict(cls, payload: Mapping[str, Any]) -> "SupportPattern":
        try:
            return cls(l=int(payload["l"]), n=int(payload["n"]), rows=tuple(tuple(r) for r in payload["rows"]))
        except KeyError as exc:
            raise ConfigError(f"support pattern payload missing key {exc}") from exc

    def save(self, path: str | Path) -> Path:
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(json.dumps(self.to_dict()), encoding="utf-8")
        return target

    @classmethod
    def load(cls, path: str | Path) -> "SupportPattern":
        try:
            payload = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read support pattern from {path}") from exc
        return cls.from_dict(payload)


@dataclass(frozen=True)
class SparseCoeffs:
    """Coefficient matrix X that is exactly zero outside its pattern."""

    values: np.ndarray
    pattern: SupportPattern

    def __post_init__(self) -> None:
        values = as_matrix(self.values, "values")
        if values.shape != self.pattern.shape:
            raise DimensionMismatchError(
                f"coefficients have shape {values.shape}, pattern is {self.pattern.shape}"
            )
        if np.any(values[~self.pattern.mask()] != 0.0):
            raise ConfigError("coefficients have nonzero entries outside the support pattern")
        frozen = np.array(values, copy=True)
        frozen.setflags(write=False)
        object.__setattr__(self, "values", frozen)

    @classmethod
    def zeros(cls, pattern: SupportPattern) -> "SparseCoeffs":
        return cls(np.zeros(pattern.shape), pattern)

    def row_block(self, indices: Sequence[int]) -> "SparseCoeffs":
        return SparseCoeffs(self.values[list(indices), :], self.pattern.select_rows(indices))

    def scale_rows(self, scaling: np.ndarray) -> "SparseCoeffs":
        return SparseCoeffs(self.values * np.asarray(scaling)[:, None], self.pattern)


def project_to_pattern(x: np.ndarray, pattern: SupportPattern) -> SparseCoeffs:
    """Keep entries on Omega, zero everything else."""

    values = as_matrix(x, "x")
    if values.shape != pattern.shape:
        raise DimensionMismatchError(f"x has shape {values.shape}, pattern is {pattern.shape}")
    return SparseCoeffs(np.where(pattern.mask(), values, 0.0), pattern)


__all__ = ["SparseCoeffs", "SupportPattern", "project_to_pattern"]
