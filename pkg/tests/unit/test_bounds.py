"""Tests for the sample-complexity bounds and the realized-pattern checks."""

from __future__ import annotations

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from app.packages.base.errors import ConfigError
from app.packages.bounds import (
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
from app.packages.model import SupportPattern


@pytest.mark.parametrize("theta, expected", [(0.1, 121), (0.2, 65), (0.3, 64), (0.4, 78)])
def test_n_star_matches_published_captions(theta, expected):
    report = compute_bounds(30, theta, 0.01)
    assert report.n_star_rounded == expected
    assert report.n_star == max(report.n2, report.n3)


def test_n0_arithmetic():
    assert compute_n0(4, 8) == 5
    assert compute_n0(7, 0) == 6
    assert compute_n0(1, 9) == 9
    with pytest.raises(ConfigError):
        compute_n0(0, 1)


def test_round_half_away_from_zero():
    assert [round_half_away(v) for v in (0.5, 1.5, 2.5, 64.49, -0.5, -2.5)] == [1, 2, 3, 64, -1, -3]


def test_n1_collapses_without_log_term():
    assert compute_n1(10, 0.25, 1.0) == pytest.approx(9 / 0.75)


@pytest.mark.parametrize(
    "args", [(1, 0.2, 0.01), (30, 0.0, 0.01), (30, 1.0, 0.01), (30, 0.2, 0.0), (30, 0.2, 1.0)]
)
def test_compute_bounds_rejects_domain_violations(args):
    with pytest.raises(ConfigError):
        compute_bounds(*args)


def test_n1_never_exceeds_n2_on_grid():
    ms = np.linspace(10, 200, 10).astype(int)
    thetas = np.linspace(0.05, 0.9, 10)
    epsilons = np.geomspace(1e-4, 0.5, 10)
    for m, theta, epsilon in itertools.product(ms, thetas, epsilons):
        report = compute_bounds(int(m), float(theta), float(epsilon))
        assert report.n1 <= report.n2
        assert all(math.isfinite(v) and v > 0 for v in (report.n0, report.n1, report.n2, report.n3))


@given(
    m=st.integers(2, 500),
    theta=st.floats(0.01, 0.95),
    epsilon=st.floats(1e-6, 0.99),
)
def test_n1_never_exceeds_n2(m, theta, epsilon):
    assert compute_n1(m, theta, epsilon) <= compute_n2(m, theta, epsilon) * (1 + 1e-12)


def test_bounds_shrink_as_epsilon_grows():
    epsilons = np.geomspace(1e-4, 0.5, 30)
    for compute in (compute_n1, compute_n2, compute_n3):
        values = [compute(40, 0.3, float(e)) for e in epsilons]
        assert all(b <= a for a, b in zip(values, values[1:]))


def test_theta_shape_of_each_bound():
    thetas = np.linspace(0.02, 0.98, 49)
    n1 = [compute_n1(30, float(t), 0.01) for t in thetas]
    n2 = [compute_n2(30, float(t), 0.01) for t in thetas]
    n3 = [compute_n3(30, float(t), 0.01) for t in thetas]
    assert all(b > a for a, b in zip(n1, n1[1:]))
    assert all(b > a for a, b in zip(n2, n2[1:]))
    low = int(np.argmin(n3))
    assert 0 < low < len(n3) - 1
    assert all(b < a for a, b in zip(n3[: low + 1], n3[1 : low + 1]))
    assert all(b > a for a, b in zip(n3[low:], n3[low + 1 :]))


def test_n3_grows_logarithmically_in_m():
    assert compute_n3(1024, 0.2, 0.01) / compute_n3(512, 0.2, 0.01) < 1.2


def test_asymptotic_threshold():
    assert asymptotic_threshold(0.5) == 2.0
    assert asymptotic_threshold(0.0) == 1.0
    m = 2**20
    assert abs(compute_n2(m, 0.2, 0.01) / m - asymptotic_threshold(0.2)) < 0.02
    with pytest.raises(ConfigError):
        asymptotic_threshold(1.0)


def test_bounds_table_is_m_major():
    reports = bounds_table([15, 20], [0.1, 0.2, 0.3], 0.01)
    assert [(r.m, r.theta) for r in reports] == [
        (15, 0.1), (15, 0.2), (15, 0.3), (20, 0.1), (20, 0.2), (20, 0.3)
    ]


def test_conditions_hold_for_distinguishable_pattern():
    report = check_necessary_conditions(SupportPattern(l=2, n=2, rows=((0,), (1,))), 2)
    assert report.n0 == 2
    assert report.all_hold


def test_conditions_fail_for_nested_supports():
    report = check_necessary_conditions(SupportPattern(l=2, n=4, rows=((0, 1), (0,))), 2)
    assert report.enough_samples
    assert report.enough_zeros_per_row
    assert not report.rows_distinguishable
    assert not report.all_hold


def test_conditions_fail_for_too_few_samples():
    report = check_necessary_conditions(SupportPattern(l=3, n=2, rows=((0,), (1,), ())), 3)
    assert not report.enough_samples
    with pytest.raises(ConfigError):
        check_necessary_conditions(SupportPattern.empty(2, 4), 3)
