import math

import numpy as np
import numpy.testing as npt
import pytest

from centralforce.actions import (
    LogAsymptotics,
    action_G,
    action_grid,
    action_point,
    action_range,
    apsidal_angle,
    fit_log_asymptotics,
    frequencies,
    initial_state,
    invert_h,
    radial_integrals,
    turning_points,
)
from centralforce.dynamics import angular_momentum, energy
from centralforce.errors import DomainError
from centralforce.potentials import g_of
from centralforce.util import MAXIMUM, MINIMUM, TOP_INFINITY, TOP_MAXIMUM, TOP_UNBOUNDED


def test_kepler_chart(kepler_charts):
    (chart,) = kepler_charts
    assert chart.bottom_kind == MINIMUM
    assert chart.top_kind == TOP_INFINITY
    assert chart.left_wall is None and chart.right_wall is None
    lo, hi = chart.energy_range(1.0)
    npt.assert_allclose(lo, -0.5, rtol=1e-12)
    assert -1e-3 < hi < 0.0


def test_harmonic_chart_is_unbounded(harmonic_charts):
    (chart,) = harmonic_charts
    assert chart.top_kind == TOP_UNBOUNDED
    npt.assert_allclose(chart.energy_range(1.0), (1.0, 5.0), rtol=1e-12)


def test_lennard_jones_charts(lj_charts):
    assert len(lj_charts) == 2
    for chart in lj_charts:
        assert chart.bottom_kind == MINIMUM
        assert chart.top_kind == TOP_MAXIMUM
        assert chart.right_wall == chart.top == 1


def test_double_well_merges_above_the_barrier(ljg_charts, chart_at):
    chart = chart_at(ljg_charts, 1.0)
    family = [c for c in ljg_charts if c.interval is chart.interval]
    assert len(family) == 3
    wells = [c for c in family if c.bottom_kind == MINIMUM]
    (merged,) = [c for c in family if c.bottom_kind == MAXIMUM]
    assert [c.top for c in wells] == [1, 1]
    assert merged.bottom == 1 and merged.top == 3
    assert merged.inner_left == 0 and merged.inner_right == 2
    assert merged.left_wall is None and merged.right_wall == 3
    npt.assert_allclose(merged.bottom_level(1.0), wells[0].top_level(1.0))


def test_turning_points(kepler_charts):
    (chart,) = kepler_charts
    r1, r2 = turning_points(chart, -0.3, 1.0)
    npt.assert_allclose([r1, r2], [(1.0 - 0.4**0.5) / 0.6, (1.0 + 0.4**0.5) / 0.6], rtol=1e-12)
    r0, r0b = turning_points(chart, chart.bottom_level(1.0), 1.0)
    assert r0 == r0b
    with pytest.raises(DomainError):
        turning_points(chart, 0.5, 1.0)


@pytest.mark.parametrize("E", [-0.45, -0.3, -0.1])
def test_kepler_actions_and_frequencies(kepler_charts, E):
    (chart,) = kepler_charts
    pt = action_point(chart, E, 1.0)
    npt.assert_allclose(pt.I1, 1.0 / math.sqrt(-2.0 * E) - 1.0, rtol=1e-10)
    npt.assert_allclose([pt.omega1, pt.omega2], (-2.0 * E) ** 1.5, rtol=1e-10)
    npt.assert_allclose(pt.nu, 1.0, rtol=1e-10)
    npt.assert_allclose(apsidal_angle(chart, E, 1.0), math.pi, rtol=1e-10)
    assert pt.accurate


def test_harmonic_frequencies(harmonic_charts):
    (chart,) = harmonic_charts
    pt = action_point(chart, 3.0, 1.0)
    npt.assert_allclose(pt.I1, 1.0, rtol=1e-10)
    npt.assert_allclose(frequencies(chart, 3.0, 1.0), (2.0, 1.0), rtol=1e-10)
    npt.assert_allclose(apsidal_angle(chart, 3.0, 1.0), 0.5 * math.pi, rtol=1e-10)


def test_difference_method_agrees(kepler_charts, lj_charts, chart_at):
    (kchart,) = kepler_charts
    quad = action_point(kchart, -0.3, 1.0)
    diff = action_point(kchart, -0.3, 1.0, method="difference")
    npt.assert_allclose([diff.omega1, diff.omega2], [quad.omega1, quad.omega2], rtol=1e-6)
    chart = chart_at(lj_charts, 1.0)
    E = chart.denormalize(0.5, 1.0)
    quad = action_point(chart, E, 1.0)
    diff = action_point(chart, E, 1.0, method="difference")
    npt.assert_allclose([diff.omega1, diff.omega2], [quad.omega1, quad.omega2], rtol=1e-6)


def test_frequency_ratio_near_the_circular_orbit(lj, lj_charts, chart_at):
    chart = chart_at(lj_charts, 1.0)
    r0 = chart.bottom_point(1.0).r0
    pt = action_point(chart, chart.denormalize(1e-6, 1.0), 1.0)
    npt.assert_allclose(pt.nu, math.sqrt(3.0 + g_of(lj, r0)), rtol=1e-4)
    assert pt.I1 > 0.0


def test_frequencies_need_energy_above_the_bottom(kepler_charts):
    (chart,) = kepler_charts
    with pytest.raises(DomainError):
        action_point(chart, chart.bottom_level(1.0), 1.0)
    with pytest.raises(DomainError):
        action_point(chart, -0.3, 1.0, method="simpson")


def test_invert_h(kepler_charts, lj_charts, chart_at):
    (kchart,) = kepler_charts
    npt.assert_allclose(invert_h(kchart, 0.5, 1.0), -1.0 / (2.0 * 1.5**2), rtol=1e-10)
    chart = chart_at(lj_charts, 1.0)
    E = chart.denormalize(0.4, 1.0)
    npt.assert_allclose(invert_h(chart, action_G(chart, E, 1.0), 1.0), E, rtol=1e-10)
    g_lo, g_hi = action_range(chart, 1.0)
    assert g_lo == 0.0 and g_hi > 0.0
    with pytest.raises(DomainError):
        invert_h(chart, 2.0 * g_hi, 1.0)


def test_bar_integral_vanishes_on_the_circle_limit(kepler_charts):
    (chart,) = kepler_charts
    vals, _ = radial_integrals(chart, -0.5 + 1e-10, 1.0, ("bar", "period"))
    assert abs(vals["bar"]) < 1e-4 * vals["period"]


@pytest.mark.parametrize("inclination", [0.0, 0.7])
def test_initial_state_lies_on_the_torus(lj, lj_charts, chart_at, inclination):
    chart = chart_at(lj_charts, 1.0)
    E = chart.denormalize(0.3, 1.0)
    I1 = action_G(chart, E, 1.0)
    z = initial_state(chart, I1, 1.0, inclination)
    x, p = z[None, :3], z[None, 3:]
    npt.assert_allclose(energy(lj, x, p), E, rtol=1e-9)
    npt.assert_allclose(angular_momentum(x, p), 1.0, rtol=1e-12)
    npt.assert_allclose(z[5], math.tan(inclination) * z[4], atol=1e-15)


def test_action_grid_shape(kepler_charts):
    (chart,) = kepler_charts
    rows = action_grid(chart, 3, 2)
    assert len(rows) == 2 and all(len(row) == 3 for row in rows)
    for row in rows:
        assert all(a.I2 == row[0].I2 for a in row)
        energies = [a.E for a in row]
        assert energies == sorted(energies)
        npt.assert_allclose([a.nu for a in row], 1.0, rtol=1e-9)


def test_log_fit_needs_a_maximum_bottom(kepler_charts):
    with pytest.raises(DomainError):
        fit_log_asymptotics(kepler_charts[0], 1.0)


@pytest.mark.slow
def test_log_asymptotics_above_the_barrier(ljg_charts, chart_at):
    chart = chart_at(ljg_charts, 1.0, bottom_kind=MAXIMUM)
    fit = fit_log_asymptotics(chart, 1.0, residual_tol=1e-4)
    assert fit.lambda_error < 0.01
    npt.assert_allclose(fit.I10, fit.I10_direct, rtol=1e-4)
    I1 = np.asarray(fit.I1)
    assert np.all(np.diff(I1) < 0.0)


def test_fitted_w1_is_the_inverse_slope():
    coef = (0.3, -0.1, 2.0, 0.05, 0.2)
    fit = LogAsymptotics(1.0, 0.15, 0.0, 1.0, 1.0, 2.0, 2.0, 0.0, np.zeros(0), np.zeros(0), coef, 2.0)

    def form(e):
        # the constant I10 = coef[2] drops out of the slope
        x = e / 2.0
        return -coef[0] * x * math.log(x) - coef[1] * x * x * math.log(x) + coef[3] * x + coef[4] * x * x

    for ebar in (1e-6, 1e-4, 1e-2):
        h = 1e-4 * ebar
        slope = (form(ebar + h) - form(ebar - h)) / (2.0 * h)
        npt.assert_allclose(fit.W1_at(ebar), 1.0 / slope, rtol=1e-6)


def test_kepler_action_matches_the_closed_form(kepler_charts):
    (chart,) = kepler_charts
    rng = np.random.default_rng(11)
    lo, hi = chart.interval.lo, chart.interval.hi
    for _ in range(50):
        I2 = lo + rng.uniform(0.05, 0.5) * (hi - lo)
        E = chart.denormalize(rng.uniform(0.05, 0.8), I2)
        npt.assert_allclose(action_G(chart, E, I2), 1.0 / math.sqrt(-2.0 * E) - I2, rtol=1e-8)


@pytest.mark.slow
@pytest.mark.parametrize("name", ["kepler_charts", "harmonic_charts", "lj_charts", "ljg_charts"])
def test_invert_h_round_trip_on_every_chart(request, name):
    for chart in request.getfixturevalue(name):
        lo, hi = chart.interval.lo, chart.interval.hi
        for I2 in lo + np.linspace(0.1, 0.9, 20) * (hi - lo):
            e_lo, e_hi = chart.energy_range(I2)
            for x in np.linspace(0.05, 0.95, 20):
                E = chart.denormalize(x, I2)
                back = invert_h(chart, action_G(chart, E, I2), I2)
                npt.assert_allclose(back, E, rtol=1e-9, atol=1e-9 * (e_hi - e_lo))
