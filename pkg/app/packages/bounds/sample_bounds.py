"""Necessary-condition sample bounds for unique dictionary recovery."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from app.packages.base.errors import ConfigError
from app.packages.model import SupportPattern
from app.packages.models_generated import BoundReport


def _check_unit_interval(name: str, value: float) -> None:
    if not 0.0 < value < 1.0:
        raise ConfigError(f"{name} must lie in (0, 1), got {value}")


def round_half_away(value: float) -> int:
    return int(math.copysign(math.floor(abs(value) + 0.5), value))


def compute_n0(m: int, omega_size: int) -> float:
    """``m + |Omega|/m - 1``: the equation count must reach the unknown count."""

    if m < 1 or omega_size < 0:
        raise ConfigError(f"compute_n0 needs m >= 1 and |Omega| >= 0, got m={m}, |Omega|={omega_size}")
    return m + omega_size / m - 1


def _quadratic_bound(m: int, theta: float, log_term: float, denominator: float) -> float:
    bracket = 1.0 - log_term / denominator
    return (m - 1) / (1.0 - theta) * (bracket + math.sqrt(bracket * bracket - 1.0))


def compute_n1(m: int, theta: float, epsilon: float) -> float:
    return _quadratic_bound(m, theta, math.log(epsilon), 4.0 * m * (m - 1) * (1.0 - theta))


def compute_n2(m: int, theta: float, epsilon: float) -> float:
    return _quadratic_bound(m, theta, math.log(epsilon) - math.log(m), 4.0 * (m - 1) * (1.0 - theta))


def compute_n3(m: int, theta: float, epsilon: float) -> float:
    return (math.log(epsilon) - math.log(m) - math.log(m - 1)) / math.log(1.0 - theta * (1.0 - theta))


def asymptotic_threshold(theta: float) -> float:
    """Limit of ``n2 / m`` for large ``m``."""

    if not 0.0 <= theta < 1.0:
        raise ConfigError(f"theta must lie in [0, 1), got {theta}")
    return 1.0 / (1.0 - theta)


def compute_bounds(m: int, theta: float, epsilon: float) -> BoundReport:
    if m < 2:
        raise ConfigError(f"bounds need m >= 2, got {m}")
    _check_unit_interval("theta", theta)
    _check_unit_interval("epsilon", epsilon)
    n1 = compute_n1(m, theta, epsilon)
    n2 = compute_n2(m, theta, epsilon)
    n3 = compute_n3(m, theta, epsilon)
    n_star = max(n2, n3)
    return BoundReport(
        m=m,
        theta=theta,
        epsilon=epsilon,
        n0=compute_n0(m, 0) + theta * n_star,
        n1=n1,
        n2=n2,
        n3=n3,
        n_star=n_star,
        n_star_rounded=round_half_away(n_star),
        asymptotic_threshold=asymptotic_threshold(theta),
    )


def bounds_table(m_values: Iterable[int], theta_values: Iterable[float], epsilon: float) -> list[BoundReport]:
    thetas = list(theta_values)
    return [compute_bounds(m, theta, epsilon) for m in m_values for theta in thetas]


@dataclass(frozen=True)
class ConditionReport:
    """The three necessary conditions evaluated on a realized square-case pattern."""

    n0: float
    enough_samples: bool
    enough_zeros_per_row: bool
    rows_distinguishable: bool

    @property
    def all_hold(self) -> bool:
        return self.enough_samples and self.enough_zeros_per_row and self.rows_distinguishable


def check_necessary_conditions(pattern: SupportPattern, m: int) -> ConditionReport:
    """Check ``n >= n0``, ``|Omega_i^c| >= m - 1`` for all rows, and that no row support
    contains another row's support."""

    if pattern.l != m:
        raise ConfigError(f"necessary conditions are stated for l = m; pattern has {pattern.l} rows, m={m}")
    n0 = compute_n0(m, pattern.size)
    mask = pattern.mask()
    zeros_per_row = pattern.n - mask.sum(axis=1)
    # outside[i, k] = |Omega_k \ Omega_i|
    outside = (~mask).astype(np.int64) @ mask.T.astype(np.int64)
    off_diagonal = ~np.eye(m, dtype=bool)
    return ConditionReport(
        n0=n0,
        enough_samples=pattern.n >= n0,
        enough_zeros_per_row=bool(np.all(zeros_per_row >= m - 1)),
        rows_distinguishable=bool(np.all(outside[off_diagonal] > 0)),
    )


__all__ = [
    "ConditionReport",
    "asymptotic_threshold",
    "bounds_table",
    "check_necessary_conditions",
    "compute_bounds",
    "compute_n0",
    "compute_n1",
    "compute_n2",
    "compute_n3",
    "round_half_away",
]
