"""Structured TLS update by successive linearization.

Unknowns are stacked as ``z = [vec(Y~); vec(X~); vec(H)]`` (row-major). Each
step linearizes ``L = H [Y~, 1] - [X~, 1]`` at the current point and solves

    min 1/2 ||Y - Y~||^2 + 1/2 ||P_{Omega^c}(X~)||^2   s.t.   J z = J z_hat - vec(L(z_hat))

through a sparse KKT factorization. Steps are halved until the objective does
not increase; a direction with no such step ends the iteration.
"""

from __future__ import annotations

import logging
import math
from typing import Callable, Optional

import numpy as np
import scipy.sparse

from app.packages.base.errors import ConfigError, DimensionMismatchError, SizeCapExceededError
from app.packages.model import SparseCoeffs, project_to_pattern
from app.packages.models_generated import UpdateConfig
from app.packages.numerics import as_matrix, solve_eq_qp


logger = logging.getLogger(__name__)

MAX_STEP_HALVINGS = 30


def stls_objective(y: np.ndarray, y_tilde: np.ndarray, x_tilde: np.ndarray, off_support: np.ndarray) -> float:
    return 0.5 * float(np.sum((y - y_tilde) ** 2)) + 0.5 * float(np.sum(x_tilde[off_support] ** 2))


def constraint_residual(y_tilde: np.ndarray, x_tilde: np.ndarray, h: np.ndarray) -> np.ndarray:
    """``L = H [Y~, 1] - [X~, 1]`` as an ``l x (n+1)`` matrix."""

    ones = np.ones((y_tilde.shape[0], 1))
    return h @ np.hstack([y_tilde, ones]) - np.hstack([x_tilde, np.ones((x_tilde.shape[0], 1))])


def constraint_jacobian(y_tilde: np.ndarray, h: np.ndarray) -> scipy.sparse.csc_matrix:
    """Sparse Jacobian of ``vec(L)``; constraint ``(i, j)`` sits in row ``i (n+1) + j``."""

    m, n = y_tilde.shape
    l = h.shape[0]  # noqa: E741
    y_offset, h_offset = 0, m * n + l * n
    x_offset = m * n

    i, a, j = np.meshgrid(np.arange(l), np.arange(m), np.arange(n), indexing="ij")
    rows_y = (i * (n + 1) + j).ravel()
    cols_y = (y_offset + a * n + j).ravel()
    vals_y = h[i, a].ravel()

    i2, j2 = np.meshgrid(np.arange(l), np.arange(n), indexing="ij")
    rows_x = (i2 * (n + 1) + j2).ravel()
    cols_x = (x_offset + i2 * n + j2).ravel()
    vals_x = -np.ones(l * n)

    y_aug = np.hstack([y_tilde, np.ones((m, 1))])
    i3, a3, j3 = np.meshgrid(np.arange(l), np.arange(m), np.arange(n + 1), indexing="ij")
    rows_h = (i3 * (n + 1) + j3).ravel()
    cols_h = (h_offset + i3 * m + a3).ravel()
    vals_h = y_aug[a3, j3].ravel()

    rows = np.concatenate([rows_y, rows_x, rows_h])
    cols = np.concatenate([cols_y, cols_x, cols_h])
    vals = np.concatenate([vals_y, vals_x, vals_h])
    shape = (l * (n + 1), m * n + l * n + l * m)
    return scipy.sparse.coo_matrix((vals, (rows, cols)), shape=shape).tocsc()


def _halve_until_descent(
    z_hat: np.ndarray,
    direction: np.ndarray,
    previous: float,
    samples: np.ndarray,
    off_support: np.ndarray,
    dims: tuple[int, int, int],
) -> tuple[np.ndarray, float, float]:
    """Largest ``alpha`` in ``1, 1/2, 1/4, ...`` whose point does not raise the objective."""

    m, n, l = dims  # noqa: E741
    alpha = 1.0
    for _ in range(MAX_STEP_HALVINGS + 1):
        z = z_hat + alpha * direction
        y_tilde = z[: m * n].reshape(m, n)
        x_tilde = z[m * n : m * n + l * n].reshape(l, n)
        objective = stls_objective(samples, y_tilde, x_tilde, off_support)
        if objective <= previous:
            break
        alpha *= 0.5
    return z, objective, alpha


def stls_update(
    y: np.ndarray,
    x_init: SparseCoeffs,
    h_init: np.ndarray,
    cfg: Optional[UpdateConfig] = None,
    *,
    on_iteration: Optional[Callable[[int, float, float], None]] = None,
) -> tuple[np.ndarray, SparseCoeffs, np.ndarray]:
    """Return ``(H, P_Omega(X~), Y~)`` after at most ``stls_max_iters`` linearized steps.

    ``on_iteration(iteration, objective, relative_step)`` is called after every step.
    """

    cfg = cfg or UpdateConfig()
    samples = as_matrix(y, "y")
    h = as_matrix(h_init, "h_init").copy()
    pattern = x_init.pattern
    m, n = samples.shape
    l = pattern.l  # noqa: E741
    if pattern.n != n or h.shape != (l, m):
        raise DimensionMismatchError(
            f"STLS needs X {(l, n)} and H {(l, m)}, got {x_init.values.shape} and {h.shape}"
        )
    if l > m:
        raise ConfigError(f"{l} atoms exceed m={m}; STLS solves one non-overcomplete block")
    if m * n > cfg.stls_size_cap:
        raise SizeCapExceededError(f"STLS instance m*n={m * n} exceeds the cap {cfg.stls_size_cap}")

    off_support = ~pattern.mask()
    hessian = np.concatenate([np.ones(m * n), off_support.ravel().astype(np.float64), np.zeros(l * m)])
    linear = np.concatenate([-samples.ravel(), np.zeros(l * n + l * m)])

    y_tilde = samples.copy()
    x_tilde = np.array(x_init.values)
    previous = math.inf
    for iteration in range(1, cfg.stls_max_iters + 1):
        z_hat = np.concatenate([y_tilde.ravel(), x_tilde.ravel(), h.ravel()])
        jacobian = constraint_jacobian(y_tilde, h)
        rhs = jacobian @ z_hat - constraint_residual(y_tilde, x_tilde, h).ravel()
        direction = solve_eq_qp(hessian, linear, jacobian, rhs) - z_hat
        z, objective, alpha = _halve_until_descent(z_hat, direction, previous, samples, off_support, (m, n, l))
        if objective > previous:
            logger.debug("STLS iteration %d: no descent after %d halvings, stopping", iteration, MAX_STEP_HALVINGS)
            break
        y_tilde = z[: m * n].reshape(m, n)
        x_tilde = z[m * n : m * n + l * n].reshape(l, n)
        h = z[m * n + l * n :].reshape(l, m)
        step = float(np.linalg.norm(z - z_hat)) / max(float(np.linalg.norm(z_hat)), np.finfo(float).tiny)
        previous = objective
        logger.debug(
            "STLS iteration %d: objective %.6e, relative step %.3e (alpha %.3g)", iteration, objective, step, alpha
        )
        if on_iteration is not None:
            on_iteration(iteration, objective, step)
        if step < cfg.stls_step_rtol:
            break
    return h, project_to_pattern(x_tilde, pattern), y_tilde


__all__ = ["constraint_jacobian", "constraint_residual", "stls_objective", "stls_update"]
