"""Closed-form sample-complexity bounds and realized-pattern condition checks."""

from .sample_bounds import (
    ConditionReport,
    asymptotic_threshold,
    bounds_table,
    check_necessary_conditions,
    compute_bounds,
    compute_n0,
    compute_n1,
    compute_n2,
    compute_n3,
    round_half_away,
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
