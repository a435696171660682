import json

import pytest

from centralforce.actions import build_all_charts
from centralforce.effective import decompose_momentum_intervals, v_infinity
from centralforce.potentials import make_builtin


def _charts(p):
    intervals = decompose_momentum_intervals(p)
    return build_all_charts(p, intervals, v_infinity(p))


def _chart_at(charts, I2, bottom_kind=None):
    """First chart whose momentum interval holds I2 (and bottom kind matches)."""
    for chart in charts:
        if chart.interval.contains(I2) and (bottom_kind is None or chart.bottom_kind == bottom_kind):
            return chart
    raise LookupError("no chart at I2 = %g" % I2)


@pytest.fixture(scope="session")
def chart_at():
    return _chart_at


@pytest.fixture(scope="session")
def kepler():
    return make_builtin("kepler", {"k": 1.0})


@pytest.fixture(scope="session")
def harmonic():
    return make_builtin("harmonic", {"k": 0.5})


@pytest.fixture(scope="session")
def lj():
    return make_builtin("lennard_jones")


@pytest.fixture(scope="session")
def ljg():
    return make_builtin("lennard_jones_gauss")


@pytest.fixture(scope="session")
def kepler_charts(kepler):
    return _charts(kepler)


@pytest.fixture(scope="session")
def harmonic_charts(harmonic):
    return _charts(harmonic)


@pytest.fixture(scope="session")
def lj_charts(lj):
    return _charts(lj)


@pytest.fixture(scope="session")
def ljg_charts(ljg):
    return _charts(ljg)


@pytest.fixture
def write_config(tmp_path):
    """Write a run configuration and return its path; the output goes to
    tmp_path/out."""

    def _write(data, name="run.json"):
        data = dict(data)
        data.setdefault("out", str(tmp_path / "out"))
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)

    return _write
