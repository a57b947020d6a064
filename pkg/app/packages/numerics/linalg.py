"""Dense linear-algebra kernels used by every solver.

All kernels share one rank cutoff: singular values below
``RANK_RTOL * s_max`` are treated as zero, so pseudo-inverses, truncations
and rank checks agree with each other.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Union

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg

from app.packages.base.errors import (
    ConfigError,
    DegenerateConstraintError,
    DimensionMismatchError,
    RankOutOfRangeError,
    SvdConvergenceError,
)


logger = logging.getLogger(__name__)

RANK_RTOL = 1e-12
KKT_RESIDUAL_RTOL = 1e-8
# Pivots of J J^T square the singular values of J.
GRAM_PIVOT_RTOL = 1e-13

ArrayLike = Union[np.ndarray, "scipy.sparse.spmatrix", "scipy.sparse.sparray"]


@dataclass(frozen=True)
class SvdFactors:
    """Thin (or full) SVD factors with non-increasing singular values."""

    u: np.ndarray
    s: np.ndarray
    vt: np.ndarray

    def reconstruct(self) -> np.ndarray:
        k = self.s.shape[0]
        return (self.u[:, :k] * self.s) @ self.vt[:k, :]


def as_matrix(a: object, name: str = "a") -> np.ndarray:
    """Return ``a`` as a finite 2-D float64 array or raise ``ConfigError``."""

    matrix = np.asarray(a, dtype=np.float64)
    if matrix.ndim != 2:
        raise DimensionMismatchError(f"{name} must be 2-D, got shape {matrix.shape}")
    if matrix.size and not np.all(np.isfinite(matrix)):
        raise ConfigError(f"{name} contains NaN or Inf entries")
    return matrix


def svd(a: np.ndarray, *, full_matrices: bool = False) -> SvdFactors:
    """Singular value decomposition via LAPACK (gesdd, falling back to gesvd)."""

    matrix = as_matrix(a)
    for driver in ("gesdd", "gesvd"):
        try:
            u, s, vt = scipy.linalg.svd(
                matrix,
                full_matrices=full_matrices,
                check_finite=False,
                lapack_driver=driver,
            )
        except np.linalg.LinAlgError:
            logger.debug("SVD driver %s failed on %s input, retrying", driver, matrix.shape)
            continue
        return SvdFactors(u=u, s=s, vt=vt)
    raise SvdConvergenceError(f"SVD did not converge for matrix of shape {matrix.shape}")


def rank_cutoff(s: np.ndarray) -> float:
    return float(s[0]) * RANK_RTOL if s.size else 0.0


def numerical_rank(a: np.ndarray) -> int:
    """Number of singular values above the global relative cutoff."""

    matrix = as_matrix(a)
    if matrix.size == 0:
        return 0
    s = scipy.linalg.svdvals(matrix, check_finite=False)
    if s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > rank_cutoff(s)))


def least_squares(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Minimum-norm minimizer of ``||a x - b||_F``.

    ``b`` may be a vector or a matrix; the result has the matching shape.
    """

    matrix = as_matrix(a)
    rhs = np.asarray(b, dtype=np.float64)
    if rhs.ndim not in (1, 2) or rhs.shape[0] != matrix.shape[0]:
        raise DimensionMismatchError(
            f"least_squares: a has {matrix.shape[0]} rows but b has shape {rhs.shape}"
        )
    if matrix.shape[1] == 0:
        return np.zeros((0,) + rhs.shape[1:])
    factors = svd(matrix)
    keep = factors.s > rank_cutoff(factors.s)
    if not np.any(keep):
        return np.zeros((matrix.shape[1],) + rhs.shape[1:])
    inv_s = 1.0 / factors.s[keep]
    projected = factors.u[:, keep].T @ rhs
    if rhs.ndim == 1:
        return factors.vt[keep, :].T @ (inv_s * projected)
    return factors.vt[keep, :].T @ (inv_s[:, None] * projected)


def pseudo_inverse(a: np.ndarray) -> np.ndarray:
    """Moore-Penrose pseudo-inverse with the global rank cutoff."""

    matrix = as_matrix(a)
    rows, cols = matrix.shape
    if matrix.size == 0:
        return np.zeros((cols, rows))
    factors = svd(matrix)
    keep = factors.s > rank_cutoff(factors.s)
    if not np.any(keep):
        return np.zeros((cols, rows))
    return (factors.vt[keep, :].T / factors.s[keep]) @ factors.u[:, keep].T


def truncate_rank(a: np.ndarray, r: int) -> np.ndarray:
    """Best rank-``r`` Frobenius approximation (Eckart-Young)."""

    matrix = as_matrix(a)
    limit = min(matrix.shape)
    if not 1 <= r <= limit:
        raise RankOutOfRangeError(f"rank {r} outside [1, {limit}] for shape {matrix.shape}")
    factors = svd(matrix)
    return (factors.u[:, :r] * factors.s[:r]) @ factors.vt[:r, :]


def _constraint_rank(jacobian: np.ndarray) -> int:
    # Column-pivoted QR orders |R_kk| non-increasingly.
    r = scipy.linalg.qr(jacobian.T, mode="r", pivoting=True, check_finite=False)[0]
    diag = np.abs(np.diag(r))
    if diag.size == 0 or diag[0] == 0.0:
        return 0
    return int(np.count_nonzero(diag > diag[0] * RANK_RTOL))


def _sparse_constraint_rank(jacobian: "scipy.sparse.csc_matrix") -> int:
    # LU pivots of J J^T reveal dependent rows; an exactly singular factor has rank < rows.
    gram = (jacobian @ jacobian.T).tocsc()
    try:
        pivots = np.abs(scipy.sparse.linalg.splu(gram).U.diagonal())
    except RuntimeError:
        return jacobian.shape[0] - 1
    if pivots.size == 0 or pivots.max() == 0.0:
        return 0
    return int(np.count_nonzero(pivots > pivots.max() * GRAM_PIVOT_RTOL))


def _hessian_operator(hessian: ArrayLike, size: int, sparse: bool):
    if scipy.sparse.issparse(hessian):
        return hessian if sparse else hessian.toarray()
    dense = np.asarray(hessian, dtype=np.float64)
    if dense.ndim == 1:
        if dense.shape[0] != size:
            raise DimensionMismatchError(f"diagonal Hessian has {dense.shape[0]} entries, expected {size}")
        return scipy.sparse.diags(dense, format="csc") if sparse else np.diag(dense)
    if dense.shape != (size, size):
        raise DimensionMismatchError(f"Hessian has shape {dense.shape}, expected {(size, size)}")
    return scipy.sparse.csc_matrix(dense) if sparse else dense


def solve_eq_qp(
    hessian: ArrayLike,
    linear_terms: np.ndarray,
    constraint_jacobian: ArrayLike,
    constraint_rhs: np.ndarray,
) -> np.ndarray:
    """Solve ``min 1/2 x^T G x + c^T x`` subject to ``A x = b`` through its KKT system.

    ``hessian`` is a dense matrix, a vector holding the diagonal of ``G``, or a
    scipy sparse matrix. Full row rank of the constraints is verified first,
    by a pivoted QR on the dense path and by the LU pivots of ``J J^T`` on the
    sparse one. A sparse ``constraint_jacobian`` then selects a sparse LU
    factorization of the KKT matrix.
    """

    c = np.asarray(linear_terms, dtype=np.float64).ravel()
    b = np.asarray(constraint_rhs, dtype=np.float64).ravel()
    n = c.shape[0]
    sparse = scipy.sparse.issparse(constraint_jacobian)
    jacobian = constraint_jacobian.tocsc() if sparse else as_matrix(constraint_jacobian, "constraint_jacobian")
    n_constraints = jacobian.shape[0]
    if jacobian.shape[1] != n or b.shape[0] != n_constraints:
        raise DimensionMismatchError(
            f"constraint jacobian {jacobian.shape} incompatible with {n} variables and {b.shape[0]} rhs entries"
        )
    g = _hessian_operator(hessian, n, sparse)
    rhs = np.concatenate([-c, b])

    rank = _sparse_constraint_rank(jacobian) if sparse else _constraint_rank(jacobian)
    if rank < n_constraints:
        raise DegenerateConstraintError(f"constraint jacobian has rank {rank} < {n_constraints} rows")

    if sparse:
        kkt = scipy.sparse.bmat([[g, jacobian.T], [jacobian, None]], format="csc")
        try:
            solution = scipy.sparse.linalg.splu(kkt).solve(rhs)
        except RuntimeError as exc:
            raise DegenerateConstraintError(f"KKT matrix of size {kkt.shape[0]} is singular") from exc
        residual = np.linalg.norm(kkt @ solution - rhs)
    else:
        kkt = np.block([[g, jacobian.T], [jacobian, np.zeros((n_constraints, n_constraints))]])
        try:
            solution = scipy.linalg.solve(kkt, rhs, assume_a="sym", check_finite=False)
        except np.linalg.LinAlgError as exc:
            raise DegenerateConstraintError("KKT matrix is singular") from exc
        residual = np.linalg.norm(kkt @ solution - rhs)

    if not np.all(np.isfinite(solution)) or residual > KKT_RESIDUAL_RTOL * max(1.0, np.linalg.norm(rhs)):
        raise DegenerateConstraintError(f"KKT solve inaccurate (residual {residual:.3e})")
    return solution[:n]


__all__ = [
    "RANK_RTOL",
    "SvdFactors",
    "as_matrix",
    "least_squares",
    "numerical_rank",
    "rank_cutoff",
    "pseudo_inverse",
    "solve_eq_qp",
    "svd",
    "truncate_rank",
]
