import io
import math

import numpy as np
import numpy.testing as npt

from centralforce.ProgressDisplay import ProgressDisplay
from centralforce.quadrature import fixed, graded_breakpoints, integrate, integrate_graded


def test_gauss_legendre_is_exact_for_polynomials():
    npt.assert_allclose(fixed(lambda x: x**7 - 3.0 * x**2, 0.0, 2.0, 4), 2.0**8 / 8 - 8.0, rtol=1e-14)


def test_integrate_several_rows():
    value, ok = integrate(lambda x: np.vstack([np.sin(x), np.cos(x)]), 0.0, 0.5 * math.pi)
    assert ok
    npt.assert_allclose(value, [1.0, 1.0], rtol=1e-13)


def test_graded_rule_resolves_a_narrow_peak():
    width = 1e-6
    func = lambda x: width / ((x - 0.3) ** 2 + width**2)
    exact = math.atan(0.7 / width) + math.atan(0.3 / width)
    value, ok = integrate_graded(func, 0.0, 1.0, 0.3, width)
    assert ok
    npt.assert_allclose(value, exact, rtol=1e-9)


def test_graded_breakpoints():
    edges = graded_breakpoints(0.0, 1.0, 0.25, 1e-3)
    assert edges[0] == 0.0 and edges[-1] == 1.0
    assert 0.25 in edges
    assert edges == sorted(edges)
    i = edges.index(0.25)
    assert edges[i] - edges[i - 1] <= 1e-3


def test_progress_display():
    stream = io.StringIO()
    bar = ProgressDisplay(4, width=8, label="sweep", stream=stream)
    bar.update(2)
    bar.update(1)
    bar.kill()
    text = stream.getvalue()
    assert text.count("#") == 8
    assert text.endswith("]\n")
    assert "sweep" in text
