import math

import numpy as np
import numpy.testing as npt
import pytest

from centralforce.errors import ConfigurationError, DomainError, SingularPointError
from centralforce.potentials import (
    GaussianTerm,
    LogTerm,
    PowerTerm,
    check_hypotheses,
    g_derivatives,
    g_of,
    limit_ell_star,
    make_builtin,
)


def _central_difference(f, r, h=1e-5):
    return (f(r + h) - f(r - h)) / (2.0 * h)


@pytest.mark.parametrize(
    "term",
    [PowerTerm(2.5, -3.0), PowerTerm(-1.0, 0.5), LogTerm(1.7), GaussianTerm(1.5, 1.47, 0.02**0.5)],
)
@pytest.mark.parametrize("order", [0, 1, 2, 3, 4, 5])
def test_term_derivatives_match_finite_differences(term, order):
    r = np.array([0.9, 1.3, 1.6])
    fd = _central_difference(lambda x: term.derivative(x, order), r)
    npt.assert_allclose(term.derivative(r, order + 1), fd, rtol=1e-6, atol=1e-6)


def test_builtin_values():
    lj = make_builtin("lennard_jones")
    assert lj(1.0) == 0.0
    npt.assert_allclose(lj(2.0 ** (1.0 / 6.0)), -1.0, rtol=1e-14)
    kep = make_builtin("kepler", {"k": 2.0})
    npt.assert_allclose(kep.derivative(2.0, 1), 0.5, rtol=1e-15)
    pl = make_builtin("power_law", {"k": 3.0, "c": 2.0, "offset": 1.0})
    npt.assert_allclose(pl(2.0), 3.0 * 8.0 / 3.0 + 1.0)
    npt.assert_allclose(pl.derivative(2.0, 1), 3.0 * 4.0)


@pytest.mark.parametrize("c", [-2.5, -2.0, 0.0, 1.0, 1.5])
def test_g_is_constant_for_power_laws(c):
    p = make_builtin("power_law", {"k": 1.0, "c": c})
    for r in (0.1, 1.0, 7.0):
        npt.assert_allclose(g_of(p, r), c, rtol=1e-12, atol=1e-12)
        npt.assert_allclose(g_derivatives(p, r)[1:], 0.0, atol=1e-9)


def test_g_of_log_is_minus_one():
    p = make_builtin("log", {"k": 1.0})
    npt.assert_allclose(g_of(p, 3.0), -1.0, rtol=1e-14)


def test_g_derivatives_match_finite_differences(ljg):
    r, h = 1.2, 1e-4
    g = g_derivatives(ljg, r, order=4)
    lower = g_derivatives(ljg, r - h, order=4)
    upper = g_derivatives(ljg, r + h, order=4)
    npt.assert_allclose(g[1:], (upper[:-1] - lower[:-1]) / (2.0 * h), rtol=1e-5, atol=1e-6 * np.abs(g).max())
    npt.assert_allclose(g[0], g_of(ljg, r), rtol=1e-13)


def test_g_singular_where_force_vanishes():
    lj = make_builtin("lennard_jones")
    with pytest.raises(SingularPointError) as err:
        g_of(lj, 2.0 ** (1.0 / 6.0))
    assert err.value.r == pytest.approx(2.0 ** (1.0 / 6.0))


@pytest.mark.parametrize(
    "terms, expected",
    [
        ((PowerTerm(-1.0, -1.0),), 0.0),
        ((PowerTerm(0.5, -2.0), PowerTerm(-1.0, -1.0)), -1.0),
        ((PowerTerm(1.0, -12.0), PowerTerm(-1.0, -6.0)), -math.inf),
        ((PowerTerm(-1.0, -4.0),), math.inf),
        ((LogTerm(1.0),), 0.0),
    ],
)
def test_limit_ell_star(terms, expected):
    assert limit_ell_star(terms) == expected


def test_hypotheses_pass_for_standard_potentials(kepler, harmonic, lj, ljg):
    for p in (kepler, harmonic, lj, ljg):
        report = check_hypotheses(p)
        assert report.passed, str(report)
    npt.assert_allclose(check_hypotheses(lj).sup_r3dV, 14.4 * 5.0 ** (-2.0 / 3.0), rtol=1e-3)


def test_inverse_square_fails_h2():
    # V = -k/(2 r^2) + const: r^3 V' is the constant ell*
    p = make_builtin("power_law", {"k": 1.0, "c": -3.0, "offset": 2.0})
    assert p.ell_star == pytest.approx(1.0)
    report = check_hypotheses(p)
    assert report.h1
    assert not report.h2
    assert not report.passed


def test_strongly_attractive_centre_fails_h1():
    p = make_builtin("power_law", {"k": 1.0, "c": -5.0})
    report = check_hypotheses(p)
    assert not report.h1
    assert report.h1_note.startswith("ell* = +inf: fails")


def test_infinite_ell_star_is_stated_in_the_report(lj):
    report = check_hypotheses(lj)
    assert lj.ell_star == -math.inf
    assert report.h1
    assert report.h1_note.startswith("ell* = -inf: holds")
    assert report.as_dict()["H1_note"] == report.h1_note
    assert "ell* = -inf" in str(report)


@pytest.mark.parametrize(
    "kind, params, parameter",
    [
        ("kepler", {}, "k"),
        ("kepler", {"k": -1.0}, "k"),
        ("kepler", {"k": 1.0, "q": 2.0}, "q"),
        ("power_law", {"k": 1.0, "c": -1.0}, "c"),
        ("lennard_jones", {"sigma": float("nan")}, "sigma"),
        ("lennard_jones_gauss", {"width": 0.0}, "width"),
    ],
)
def test_bad_parameters_are_named(kind, params, parameter):
    with pytest.raises(ConfigurationError) as err:
        make_builtin(kind, params)
    assert err.value.parameter == parameter


def test_unknown_kind():
    with pytest.raises(ConfigurationError):
        make_builtin("yukawa", {})


def test_scaled_potential(lj):
    big = lj.scaled(4.0)
    npt.assert_allclose(big.derivative(1.3, 3), 4.0 * lj.derivative(1.3, 3), rtol=1e-14)
    npt.assert_allclose(g_of(big, 1.3), g_of(lj, 1.3), rtol=1e-13)
    with pytest.raises(DomainError):
        lj.scaled(-1.0)


def test_range_is_checked(kepler):
    with pytest.raises(DomainError):
        g_of(kepler, 1e4)
    narrow = kepler.with_range(0.5, 2.0)
    assert not narrow.in_range(3.0)
    with pytest.raises(ConfigurationError):
        kepler.with_range(2.0, 1.0)
