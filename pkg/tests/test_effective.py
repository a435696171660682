import math

import numpy as np
import numpy.testing as npt
import pytest

from centralforce.effective import (
    branch_rows,
    critical_level_slope,
    decompose_momentum_intervals,
    find_critical_points,
    momentum_range,
    v_infinity,
    veff,
    veff_dr,
)
from centralforce.errors import DomainError, HypothesisViolation
from centralforce.potentials import make_builtin
from centralforce.util import MAXIMUM, MINIMUM


def test_v_infinity(kepler, harmonic, lj):
    assert abs(v_infinity(kepler)) < 1e-15
    assert abs(v_infinity(lj)) < 1e-15
    assert v_infinity(harmonic) == math.inf


def test_kepler_circular_orbit(kepler):
    (cp,) = find_critical_points(kepler, 2.0)
    assert cp.kind == MINIMUM
    npt.assert_allclose(cp.r0, 2.0, rtol=1e-12)
    npt.assert_allclose(cp.level, -0.25, rtol=1e-12)
    npt.assert_allclose(veff_dr(kepler, cp.r0, 2.0), 0.0, atol=1e-14)
    assert not cp.degenerate
    assert math.isnan(cp.lam)


def test_lennard_jones_branches(lj):
    points = find_critical_points(lj, 1.0)
    assert [cp.kind for cp in points] == [MINIMUM, MAXIMUM]
    inner, outer = points
    npt.assert_allclose(inner.r0, 1.136, atol=2e-3)
    assert inner.r0 < 5.0 ** (1.0 / 6.0) < outer.r0
    assert outer.level > inner.level
    npt.assert_allclose(outer.lam, math.sqrt(-outer.curvature))
    # beyond the top of r^3 V' no circular orbit exists
    assert find_critical_points(lj, 5.0) == ()


def test_critical_level_slope(lj):
    ell, h = 1.0, 1e-6
    (inner, _) = find_critical_points(lj, ell)
    (up, _) = find_critical_points(lj, ell + h)
    (down, _) = find_critical_points(lj, ell - h)
    npt.assert_allclose((up.level - down.level) / (2.0 * h), critical_level_slope(lj, inner), rtol=1e-6)


def test_critical_level_slope_on_random_cases(kepler_charts, harmonic_charts, lj_charts, ljg_charts):
    rng = np.random.default_rng(5)
    families = [kepler_charts, harmonic_charts, lj_charts, ljg_charts]
    for _ in range(20):
        charts = families[rng.integers(len(families))]
        chart = charts[rng.integers(len(charts))]
        p, interval = chart.potential, chart.interval
        ell = (interval.lo + rng.uniform(0.1, 0.9) * (interval.hi - interval.lo)) ** 2
        h = 1e-6 * max(ell, 1.0)
        points = find_critical_points(p, ell)
        up, down = find_critical_points(p, ell + h), find_critical_points(p, ell - h)
        assert len(up) == len(down) == len(points)
        for cp, a, b in zip(points, up, down):
            npt.assert_allclose((a.level - b.level) / (2.0 * h), critical_level_slope(p, cp), rtol=1e-6)


def test_momentum_range(kepler, lj):
    lo, hi = momentum_range(kepler, cap=10.0)
    assert lo == 0.0
    assert hi == 10.0
    lo, hi = momentum_range(lj, cap=10.0)
    assert lo == 0.0
    npt.assert_allclose(hi**2, 14.4 * 5.0 ** (-2.0 / 3.0), rtol=1e-9)


def test_momentum_range_rejects_inverse_square():
    p = make_builtin("power_law", {"k": 1.0, "c": -3.0})
    with pytest.raises(HypothesisViolation):
        momentum_range(p, cap=10.0)


def test_kepler_single_interval(kepler):
    (interval,) = decompose_momentum_intervals(kepler)
    assert interval.kinds == (MINIMUM,)
    # below sqrt(r_lo) the circular orbit leaves the working range: a cut
    npt.assert_allclose(interval.lo, math.sqrt(1e-3) + 1e-3, rtol=1e-6)
    # the cap is open-ended and is not shrunk
    assert interval.hi == 10.0
    assert interval.levels_distinct


def test_lennard_jones_intervals_cut_where_levels_cross(lj):
    intervals = decompose_momentum_intervals(lj)
    assert len(intervals) == 2
    first, second = intervals
    assert first.kinds == second.kinds == (MINIMUM, MAXIMUM)
    assert first.level_order != second.level_order
    # the well bottom crosses V^inf = 0 between the two
    (well, _) = find_critical_points(lj, first.hi**2)
    assert well.level < 0.0
    (well, _) = find_critical_points(lj, second.lo**2)
    assert well.level > 0.0
    npt.assert_allclose(second.hi**2, 14.4 * 5.0 ** (-2.0 / 3.0), rtol=1e-3)


def test_lennard_jones_gauss_has_a_double_well(ljg):
    intervals = decompose_momentum_intervals(ljg)
    double = [iv for iv in intervals if iv.kinds == (MINIMUM, MAXIMUM, MINIMUM, MAXIMUM)]
    assert double
    assert any(iv.contains(1.0) for iv in double)
    for iv in intervals:
        assert iv.lo < iv.hi
        points = iv.critical_points(ljg, iv.mid)
        assert tuple(cp.kind for cp in points) == iv.kinds


def test_intervals_do_not_overlap(ljg):
    intervals = decompose_momentum_intervals(ljg)
    for a, b in zip(intervals[:-1], intervals[1:]):
        assert a.hi < b.lo


def test_branch_rows(lj):
    rows = branch_rows(lj, [0.5, 1.0])
    assert [row[2] for row in rows] == [0, 1, 0, 1]
    assert rows[0][1] == pytest.approx(0.25)
    assert rows[1][4] == MAXIMUM


def test_effective_potential_domain(kepler):
    with pytest.raises(DomainError):
        veff(kepler, 1.0, -1.0)
    with pytest.raises(DomainError):
        find_critical_points(kepler, -1.0)
    with pytest.raises(DomainError):
        decompose_momentum_intervals(kepler, n_samples=8)


def test_only_cuts_and_attained_ends_are_shrunk(lj):
    intervals = decompose_momentum_intervals(lj, cut_fraction=1e-3)
    L_m, L_M = momentum_range(lj, cap=10.0)
    delta = 1e-3 * (L_M - L_m)
    # the largest momentum is an attained maximum of r^3 V'
    npt.assert_allclose(intervals[-1].hi, L_M - delta, rtol=1e-12)
    for a, b in zip(intervals[:-1], intervals[1:]):
        npt.assert_allclose(b.lo - a.hi, 2.0 * delta, rtol=1e-6)
    # below the first sample the outer maximum leaves the working range
    first = intervals[0]
    assert first.lo > 0.0
    assert len(first.critical_points(lj, first.lo)) == 2


def test_tolerances_reach_the_interval(kepler):
    (interval,) = decompose_momentum_intervals(kepler, tol_nondeg=1e-6, tol_grad=1e-9)
    assert (interval.tol_nondeg, interval.tol_grad) == (1e-6, 1e-9)
    (cp,) = interval.critical_points(kepler, interval.mid)
    npt.assert_allclose(cp.r0, interval.mid**2, rtol=1e-12)
