"""Orthogonal matching pursuit with fixed-sparsity and residual stopping."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from app.packages.base.errors import (
    ConfigError,
    DimensionMismatchError,
    NotNormalizedError,
    OmpBreakdownError,
)
from app.packages.model import Dictionary, SparseCoeffs, SupportPattern
from app.packages.models_generated import OmpConfig
from app.packages.numerics import as_matrix, least_squares


logger = logging.getLogger(__name__)

ZERO_RESIDUAL_RTOL = 1e-12


@dataclass(frozen=True)
class OmpResult:
    """Sorted support, matching LS coefficients and the residual norm after each step."""

    support: tuple[int, ...]
    coeffs: np.ndarray
    residual_norms: tuple[float, ...]


def _sparsity_cap(d: Dictionary, cfg: OmpConfig) -> int:
    if cfg.k is None:
        return min(d.m, d.l)
    if cfg.k > d.l:
        raise ConfigError(f"OMP sparsity k={cfg.k} exceeds the {d.l} available atoms")
    return cfg.k


def _sorted(support: list[int], coeffs: np.ndarray) -> tuple[tuple[int, ...], np.ndarray]:
    order = np.argsort(support, kind="stable")
    return tuple(int(support[i]) for i in order), np.asarray(coeffs)[order]


def _encode(atoms: np.ndarray, y: np.ndarray, cap: int, residual_tol: float) -> OmpResult:
    y_norm = float(np.linalg.norm(y))
    norms = [y_norm]
    support: list[int] = []
    coeffs = np.zeros(0)
    residual = y
    stop = max(residual_tol, ZERO_RESIDUAL_RTOL * y_norm)
    while len(support) < cap and norms[-1] > stop:
        correlations = np.abs(atoms.T @ residual)
        chosen = int(np.argmax(correlations))
        if chosen in support:
            partial_support, partial_coeffs = _sorted(support, coeffs)
            raise OmpBreakdownError(
                f"atom {chosen} selected twice after {len(support)} steps",
                support=partial_support,
                coeffs=partial_coeffs,
            )
        support.append(chosen)
        coeffs = least_squares(atoms[:, support], y)
        residual = y - atoms[:, support] @ coeffs
        norms.append(float(np.linalg.norm(residual)))
    ordered_support, ordered_coeffs = _sorted(support, coeffs)
    return OmpResult(support=ordered_support, coeffs=ordered_coeffs, residual_norms=tuple(norms))


def omp_encode(d: Dictionary, y: np.ndarray, cfg: OmpConfig) -> OmpResult:
    """Greedily code one signal; ties in correlation go to the lowest atom index."""

    if not d.is_normalized():
        raise NotNormalizedError("OMP requires unit-norm atoms; call normalize() first")
    column = np.asarray(y, dtype=np.float64).ravel()
    if column.shape[0] != d.m:
        raise DimensionMismatchError(f"signal has length {column.shape[0]}, dictionary has m={d.m}")
    residual_tol = 0.0 if cfg.residual_tol is None else cfg.residual_tol
    return _encode(d.atoms, column, _sparsity_cap(d, cfg), residual_tol)


def omp_encode_all(d: Dictionary, y: np.ndarray, cfg: OmpConfig) -> SparseCoeffs:
    """Code every column of ``y``; a breakdown is re-raised with its column index."""

    if not d.is_normalized():
        raise NotNormalizedError("OMP requires unit-norm atoms; call normalize() first")
    samples = as_matrix(y, "y")
    if samples.shape[0] != d.m:
        raise DimensionMismatchError(f"samples have {samples.shape[0]} rows, dictionary has m={d.m}")
    cap = _sparsity_cap(d, cfg)
    residual_tol = 0.0 if cfg.residual_tol is None else cfg.residual_tol
    n = samples.shape[1]
    values = np.zeros((d.l, n))
    mask = np.zeros((d.l, n), dtype=bool)
    for j in range(n):
        try:
            result = _encode(d.atoms, samples[:, j], cap, residual_tol)
        except OmpBreakdownError as exc:
            raise OmpBreakdownError(str(exc), support=exc.support, coeffs=exc.coeffs, column=j) from exc
        support = list(result.support)
        values[support, j] = result.coeffs
        mask[support, j] = True
    logger.debug("OMP coded %d signals with %d nonzeros", n, int(mask.sum()))
    return SparseCoeffs(values, SupportPattern.from_mask(mask))


__all__ = ["OmpResult", "omp_encode", "omp_encode_all"]
