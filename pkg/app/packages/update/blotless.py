"""Block total-least-squares dictionary update.

A non-overcomplete (sub-)dictionary ``D`` is recovered through ``H = D^+``:
every row satisfies ``H_i Y = X_i`` with ``X_i`` vanishing off its support
and ``sum(H_i) = 1`` fixing the scale. The row systems are solved by least
squares, per-row TLS, or an iterated rank-``m`` TLS projection, and the
scheduler applies them block by block to an overcomplete dictionary.
"""

from __future__ import annotations

import logging
from typing import Optional

import numpy as np
import scipy.linalg

from app.packages.base.errors import (
    AmbiguousRowError,
    BlockUpdateError,
    ConfigError,
    DegenerateDataError,
    DimensionMismatchError,
    NumericalFailureError,
    ScalingDegenerateError,
)
from app.packages.model import Dictionary, SparseCoeffs, SupportPattern, normalize
from app.packages.models_generated import UpdateConfig, UpdateMethod
from app.packages.numerics import (
    RANK_RTOL,
    SvdFactors,
    as_matrix,
    least_squares,
    numerical_rank,
    pseudo_inverse,
    rank_cutoff,
    svd,
)

from .atoms import replace_dead_atoms
from .stls import stls_update


logger = logging.getLogger(__name__)

SCALE_ATOL = 1e-10


def _check_shapes(y: np.ndarray, pattern: SupportPattern) -> tuple[int, int]:
    m, n = y.shape
    if pattern.n != n:
        raise DimensionMismatchError(f"pattern has {pattern.n} columns, samples have {n}")
    if pattern.l > m:
        raise ConfigError(f"{pattern.l} atoms exceed m={m}; split the dictionary into blocks of at most m atoms")
    return m, n


def row_system(y: np.ndarray, support: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
    """``[[Y^T, -P_support], [1^T, 0]]`` and right-hand side ``[0, ..., 0, 1]``.

    Unknowns are ``[H_i^T; X_{i,support}^T]``.
    """

    m, n = y.shape
    k = len(support)
    a = np.zeros((n + 1, m + k))
    a[:n, :m] = y.T
    a[list(support), m + np.arange(k)] = -1.0
    a[n, :m] = 1.0
    b = np.zeros(n + 1)
    b[n] = 1.0
    return a, b


def _solve_ls_row(a: np.ndarray, b: np.ndarray, row: int, strict: bool) -> np.ndarray:
    factors = svd(a)
    keep = factors.s > rank_cutoff(factors.s)
    rank = int(np.count_nonzero(keep))
    if strict and rank < a.shape[1]:
        raise AmbiguousRowError(row, rank, a.shape[1])
    if rank == 0:
        return np.zeros(a.shape[1])
    return factors.vt[keep, :].T @ ((factors.u[:, keep].T @ b) / factors.s[keep])


def blotless_ls(
    y: np.ndarray, pattern: SupportPattern, *, strict: bool = True
) -> tuple[np.ndarray, SparseCoeffs]:
    """Least-squares solve of every row system.

    With ``strict`` a row whose system lacks full column rank raises
    ``AmbiguousRowError``; otherwise the minimum-norm solution is kept.
    """

    samples = as_matrix(y, "y")
    m, n = _check_shapes(samples, pattern)
    h = np.zeros((pattern.l, m))
    x = np.zeros((pattern.l, n))
    for i, support in enumerate(pattern.rows):
        a, b = row_system(samples, support)
        solution = _solve_ls_row(a, b, i, strict)
        h[i] = solution[:m]
        x[i, list(support)] = solution[m:]
    return h, SparseCoeffs(x, pattern)


def solve_tls_row(a: np.ndarray, b: np.ndarray, row: int = 0) -> np.ndarray:
    """TLS solution of ``a z ~ b``: the least right singular vector of ``[a, -b]`` scaled to end in 1.

    On ties the last vector in LAPACK order is taken.
    """

    augmented = np.column_stack([a, -b])
    factors = svd(augmented, full_matrices=True)
    v = factors.vt[-1]
    if abs(v[-1]) < SCALE_ATOL:
        raise ScalingDegenerateError(row, f"least singular vector ends in {v[-1]:.3e}; cannot scale to 1")
    return v[:-1] / v[-1]


def partls_update(y: np.ndarray, pattern: SupportPattern) -> tuple[np.ndarray, SparseCoeffs]:
    """Independent per-row TLS solves, each rescaled so its ``H`` row sums to one."""

    samples = as_matrix(y, "y")
    m, n = _check_shapes(samples, pattern)
    h = np.zeros((pattern.l, m))
    x = np.zeros((pattern.l, n))
    for i, support in enumerate(pattern.rows):
        a, b = row_system(samples, support)
        solution = solve_tls_row(a, b, i)
        row_sum = float(solution[:m].sum())
        if abs(row_sum) < SCALE_ATOL:
            raise ScalingDegenerateError(i, f"H row sums to {row_sum:.3e}; cannot normalize")
        solution = solution / row_sum
        h[i] = solution[:m]
        x[i, list(support)] = solution[m:]
    return h, SparseCoeffs(x, pattern)


def _truncate(y: np.ndarray, x: np.ndarray) -> tuple[SvdFactors, np.ndarray, np.ndarray]:
    m = y.shape[0]
    factors = svd(np.hstack([y.T, x.T]))
    rank = int(np.count_nonzero(factors.s > rank_cutoff(factors.s)))
    # A complete block needs rank m; an exact undercomplete block of k atoms only reaches rank k.
    required = min(m, x.shape[0])
    if rank < required:
        raise DegenerateDataError(f"[Y^T, X^T] has rank {rank} < {required}; TLS truncation collapses")
    approx = (factors.u[:, :m] * factors.s[:m]) @ factors.vt[:m, :]
    return factors, approx[:, :m].T, approx[:, m:].T


def tls_truncate(y: np.ndarray, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Best rank-``m`` approximation of ``[Y^T, X^T]``, returned as ``(Y_tilde, X_tilde)``."""

    _, y_tilde, x_tilde = _truncate(y, x)
    return y_tilde, x_tilde


def _tls_inverse(factors: SvdFactors, y_tilde: np.ndarray, x_tilde: np.ndarray) -> np.ndarray:
    # Y~^T = U S V_Y^T and X~^T = U S V_X^T share U S, so H^T = V_Y^{-T} V_X^T.
    m = y_tilde.shape[0]
    v_y = factors.vt[:m, :m]
    s = scipy.linalg.svdvals(v_y, check_finite=False)
    if s[-1] <= s[0] * RANK_RTOL:
        return least_squares(y_tilde.T, x_tilde.T).T
    return scipy.linalg.solve(v_y, factors.vt[:m, m:], check_finite=False).T


def itertls_update(
    y: np.ndarray, x_init: SparseCoeffs, cfg: Optional[UpdateConfig] = None
) -> tuple[np.ndarray, SparseCoeffs]:
    """Alternate rank-``m`` TLS truncation and projection onto the support pattern.

    An all-zero ``x_init`` is replaced by the (non-strict) least-squares estimate.
    """

    cfg = cfg or UpdateConfig()
    samples = as_matrix(y, "y")
    pattern = x_init.pattern
    _check_shapes(samples, pattern)
    if np.any(x_init.values):
        x_hat = np.array(x_init.values)
    else:
        x_hat = blotless_ls(samples, pattern, strict=False)[1].values
    support = pattern.mask()
    h = np.zeros((pattern.l, samples.shape[0]))
    for iteration in range(1, cfg.iter_tls_max_iters + 1):
        factors, y_tilde, x_tilde = _truncate(samples, x_hat)
        h = _tls_inverse(factors, y_tilde, x_tilde)
        x_next = np.where(support, x_tilde, 0.0)
        step = float(np.linalg.norm(x_next - x_hat))
        scale = float(np.linalg.norm(x_hat))
        x_hat = x_next
        logger.debug("IterTLS iteration %d: step %.3e", iteration, step)
        if step <= cfg.iter_tls_tol * scale:
            break
    return h, SparseCoeffs(x_hat, pattern)


def dictionary_from_inverse(h: np.ndarray) -> np.ndarray:
    """``D = H^{-1}`` for a complete estimate; a rank-deficient ``H`` is an error."""

    estimate = as_matrix(h, "h")
    rank = numerical_rank(estimate)
    if rank < min(estimate.shape):
        raise DegenerateDataError(f"H has rank {rank} < {min(estimate.shape)}; dictionary not recoverable")
    return pseudo_inverse(estimate)


def _solve_block(y_r: np.ndarray, x_block: SparseCoeffs, cfg: UpdateConfig) -> tuple[np.ndarray, SparseCoeffs]:
    method = cfg.method
    if method is UpdateMethod.BLOTLESS_LS:
        return blotless_ls(y_r, x_block.pattern, strict=False)
    if method is UpdateMethod.BLOTLESS_PARTLS:
        return partls_update(y_r, x_block.pattern)
    if method is UpdateMethod.BLOTLESS_STLS:
        h_init = least_squares(y_r.T, x_block.values.T).T
        h, x, _ = stls_update(y_r, x_block, h_init, cfg)
        return h, x
    return itertls_update(y_r, x_block, cfg)


def _block_atoms(h: np.ndarray, y_r: np.ndarray, x: np.ndarray) -> np.ndarray:
    if h.shape[0] == h.shape[1]:
        return dictionary_from_inverse(h)
    return least_squares(x.T, y_r.T).T


def block_partition(l: int, block_size: int) -> list[list[int]]:  # noqa: E741
    return [list(range(start, min(start + block_size, l))) for start in range(0, l, block_size)]


def blotless_block_update(
    y: np.ndarray, d: Dictionary, x: SparseCoeffs, cfg: Optional[UpdateConfig] = None
) -> tuple[Dictionary, SparseCoeffs]:
    """One sweep over consecutive atom blocks, each solved on its residual ``Y - D_{T^c} X_{T^c}``."""

    cfg = cfg or UpdateConfig()
    if not cfg.method.is_blotless:
        raise ConfigError(f"{cfg.method.label} is not a BLOTLESS method")
    samples = as_matrix(y, "y")
    m = samples.shape[0]
    if d.m != m or x.values.shape != (d.l, samples.shape[1]):
        raise DimensionMismatchError(
            f"Y {samples.shape}, D {d.atoms.shape} and X {x.values.shape} are inconsistent"
        )
    block_size = cfg.resolved_block_size(m)
    if block_size > m:
        raise ConfigError(f"block_size={block_size} exceeds m={m}; blocks must not be overcomplete")

    atoms = np.array(d.atoms)
    coeffs = np.array(x.values)
    pattern = x.pattern
    dead = set(pattern.empty_rows())
    for block, members in enumerate(block_partition(d.l, block_size)):
        active = [i for i in members if i not in dead]
        if not active:
            continue
        inactive = np.setdiff1d(np.arange(d.l), active)
        y_r = samples - atoms[:, inactive] @ coeffs[inactive, :]
        x_block = SparseCoeffs(coeffs[active, :], pattern.select_rows(active))
        try:
            h, x_new = _solve_block(y_r, x_block, cfg)
            atoms[:, active] = _block_atoms(h, y_r, x_new.values)
        except NumericalFailureError as exc:
            raise BlockUpdateError(block, active, str(exc)) from exc
        coeffs[active, :] = x_new.values
        logger.debug("%s block %d updated %d atoms", cfg.method.label, block, len(active))

    atoms, coeffs, pattern = replace_dead_atoms(atoms, samples, coeffs, pattern, dead)
    normalized, scaling = normalize(Dictionary(atoms))
    return normalized, SparseCoeffs(coeffs, pattern).scale_rows(scaling)


__all__ = [
    "block_partition",
    "blotless_block_update",
    "blotless_ls",
    "dictionary_from_inverse",
    "itertls_update",
    "partls_update",
    "row_system",
    "solve_tls_row",
    "tls_truncate",
]
