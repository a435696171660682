import math

import numpy as np
import numpy.testing as npt
import pytest

from centralforce.birkhoff import (
    CircularOrbitData,
    circular_orbit_data,
    cleared_residual,
    find_degenerate_exponents,
    homogeneous_potential,
    nu1_numerator,
    nu2_numerator,
    nu2_numerator_horner,
    nu_coefficients,
    nu_coefficients_horner,
    numeric_expansion_check,
    rhs_G1_G2,
    transcription_fuzz,
)
from centralforce.errors import DomainError
from centralforce.potentials import g_of


@pytest.mark.parametrize("exponent", [-2.0, 1.0])
def test_closed_orbit_exponents_have_constant_ratio(exponent):
    data = CircularOrbitData.homogeneous(exponent, r0=1.7, Vp=0.3)
    nu0, nu1, nu2 = nu_coefficients(data)
    npt.assert_allclose(nu0, math.sqrt(3.0 + exponent))
    assert nu1 == 0.0
    assert nu2 == 0.0
    assert nu2_numerator_horner(exponent, 0.0, 0.0, 0.0, 0.0) == 0.0


def test_nu0_squared_is_three_plus_g(lj):
    for r0 in (1.13, 1.2, 1.25):
        data = circular_orbit_data(lj, r0)
        nu0, _, _ = nu_coefficients(data)
        npt.assert_allclose(nu0**2, 3.0 + g_of(lj, r0), rtol=1e-13)


def test_kepler_and_harmonic_potentials(kepler, harmonic):
    for p, nu0 in ((kepler, 1.0), (harmonic, 2.0)):
        data = circular_orbit_data(p, 1.3)
        coeffs = nu_coefficients(data)
        npt.assert_allclose(coeffs, (nu0, 0.0, 0.0), atol=1e-10)
        terms = rhs_G1_G2(p, 1.3)
        assert abs(terms.res1) < 1e-8
        assert abs(terms.res2) < 1e-8
        assert terms.accurate


def test_cleared_residual_factorisation():
    c = np.linspace(-2.9, 2.0, 50)
    npt.assert_allclose(cleared_residual(c), -2.0 * (c - 1.0) * (c + 2.0) * (c + 3.0) ** 2, rtol=1e-12, atol=1e-9)
    assert cleared_residual(0.5) == pytest.approx(30.625)


def test_both_evaluations_agree():
    worst = transcription_fuzz(n=200, seed=7)
    assert worst <= 1e-12
    data = CircularOrbitData(1.4, 2.5, 0.7, 0.3, -1.1, 2.0, -4.0)
    npt.assert_allclose(nu_coefficients(data), nu_coefficients_horner(data), rtol=1e-10)


def test_numerators_accept_arrays():
    g = np.array([-2.0, 0.0, 1.0])
    npt.assert_allclose(nu1_numerator(g, 0.0, 0.0), [0.0, 36.0, 0.0])
    assert nu2_numerator(g, 0.0, 0.0, 0.0, 0.0).shape == (3,)


def test_lennard_jones_is_not_degenerate(lj):
    terms = rhs_G1_G2(lj, 1.2)
    assert abs(terms.res1) > 1e-3
    npt.assert_allclose(terms.G1, terms.G1_closed, rtol=1e-7)
    assert terms.as_dict()["res1"] == terms.res1


def test_scaling_of_the_coefficients(lj):
    s = 4.0
    base = nu_coefficients(circular_orbit_data(lj, 1.2))
    scaled = nu_coefficients(circular_orbit_data(lj.scaled(s), 1.2))
    npt.assert_allclose(scaled, [base[0], base[1] / math.sqrt(s), base[2] / s], rtol=1e-12)


def test_branch_derivative_of_the_radius(lj):
    data = circular_orbit_data(lj, 1.2)
    # r^3 V'(r) = I2^2 along the branch
    I2 = math.sqrt(1.2**3 * data.Vp)
    h = 1e-6
    r_up = 1.2 + data.R * h
    npt.assert_allclose(r_up**3 * lj.derivative(r_up, 1), (I2 + h) ** 2, rtol=1e-9)


def test_unstable_orbits_are_rejected(lj):
    with pytest.raises(DomainError):
        circular_orbit_data(lj, 1.5)
    with pytest.raises(DomainError):
        CircularOrbitData(1.0, -1.0, 0.0)
    with pytest.raises(DomainError):
        nu_coefficients(CircularOrbitData(1.0, 1.0, -3.5))


def test_expansion_matches_the_fit(kepler_charts, lj_charts, chart_at):
    check = numeric_expansion_check(kepler_charts[0], 1.0)
    assert all(check.agree)
    assert not check.inconclusive
    npt.assert_allclose(check.fitted[0], 1.0, rtol=1e-6)
    check = numeric_expansion_check(chart_at(lj_charts, 1.0), 1.0)
    assert check.agree[0]
    assert check.as_dict()["closed_form"][0] == check.closed[0]


def test_expansion_of_the_harmonic_oscillator(harmonic_charts):
    check = numeric_expansion_check(harmonic_charts[0], 1.0)
    assert all(check.agree)
    npt.assert_allclose(check.closed, (2.0, 0.0, 0.0), atol=1e-10)
    npt.assert_allclose(check.fitted[0], 2.0, rtol=1e-6)


@pytest.mark.slow
@pytest.mark.parametrize("I2", [0.5, 1.0, 1.5])
def test_lennard_jones_expansion_at_several_momenta(lj_charts, chart_at, I2):
    check = numeric_expansion_check(chart_at(lj_charts, I2), I2)
    assert not check.inconclusive
    assert all(check.agree)


def test_degenerate_exponents():
    report = find_degenerate_exponents()
    npt.assert_allclose(report.roots, [-3.0, -2.0, 1.0], atol=1e-9)
    assert list(report.excluded) == [report.roots[0]]
    npt.assert_allclose(report.admissible, [-2.0, 1.0], atol=1e-9)
    for res2 in report.res2.values():
        assert abs(res2) < 1e-8
    assert report.r0_spread <= 1e-8


def test_exponent_scan_must_cover_the_range():
    with pytest.raises(DomainError):
        find_degenerate_exponents(scan=(-2.5, 2.0))
    with pytest.raises(DomainError):
        find_degenerate_exponents(step=1e-2)


def test_homogeneous_potential_has_the_exponent():
    for c in (-2.5, -1.0, 0.5):
        npt.assert_allclose(g_of(homogeneous_potential(c), 2.0), c, rtol=1e-12)
