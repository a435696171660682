import csv
import json
import os

import pytest

from centralforce.scripts import cf_main
from centralforce.config import parse_config
from centralforce.scripts.common import EXIT_ANALYSIS, EXIT_CONFIG, EXIT_OK, charts

KEPLER = {"kind": "kepler", "params": {"k": 1.0}}
LJ = {"kind": "lennard_jones"}
SMALL_GRID = {"n1": 2, "n2": 2, "bertrand_points": 8, "p_theta_points": 16}


def _read_csv(path):
    with open(path) as f:
        return list(csv.DictReader(f))


def _read_json(path):
    with open(path) as f:
        return json.load(f)


def _out(config_path):
    with open(config_path) as f:
        return json.load(f)["out"]


def test_profile(write_config):
    path = write_config({"potential": KEPLER, "grid": SMALL_GRID})
    assert cf_main.main(["profile", "--config", path]) == EXIT_OK
    out = _out(path)
    rows = _read_csv(os.path.join(out, "branches.csv"))
    assert len(rows) == 16
    assert {row["branch"] for row in rows} == {"0"}
    assert {row["kind"] for row in rows} == {"minimum"}
    profile = _read_json(os.path.join(out, "profile.json"))
    assert profile["hypotheses"]["H2"] is True
    assert len(profile["intervals"]) == 1
    assert profile["charts"][0]["top_kind"] == "infinity"
    assert os.path.exists(os.path.join(out, "branches.units.json"))


def test_profile_reports_failed_hypotheses(write_config):
    path = write_config({"potential": {"kind": "power_law", "params": {"k": 1.0, "c": -3.0}}})
    assert cf_main.main(["profile", "--config", path]) == EXIT_ANALYSIS
    profile = _read_json(os.path.join(_out(path), "profile.json"))
    assert profile["hypotheses"]["H2"] is False


def test_configuration_errors_exit_with_two(write_config, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"potential": ')
    assert cf_main.main(["profile", "--config", str(bad)]) == EXIT_CONFIG
    path = write_config({"potential": KEPLER, "grid": {"nn": 3}})
    assert cf_main.main(["bertrand", "--config", path]) == EXIT_CONFIG
    path = write_config({"potential": {"kind": "kepler", "params": {"k": -1.0}}})
    assert cf_main.main(["profile", "--config", path]) == EXIT_CONFIG
    assert cf_main.main(["profile", "--config", str(tmp_path / "absent.json")]) == EXIT_CONFIG
    path = write_config({"potential": KEPLER, "dynamics": {"eps": 0.01}}, name="scalar.json")
    assert cf_main.main(["nekhoroshev", "--config", path]) == EXIT_CONFIG


def test_out_and_seed_overrides(write_config, tmp_path):
    path = write_config({"potential": KEPLER, "grid": SMALL_GRID})
    other = str(tmp_path / "elsewhere")
    assert cf_main.main(["bertrand", "--config", path, "--out", other, "--seed", "3"]) == EXIT_OK
    assert os.path.exists(os.path.join(other, "bertrand.json"))


@pytest.mark.parametrize("potential, verdict", [(KEPLER, "degenerate"), (LJ, "non-degenerate")])
def test_bertrand(write_config, potential, verdict):
    path = write_config({"potential": potential, "grid": SMALL_GRID})
    assert cf_main.main(["bertrand", "--config", path]) == EXIT_OK
    assert _read_json(os.path.join(_out(path), "bertrand.json"))["verdict"] == verdict


def test_actions(write_config):
    path = write_config({"potential": KEPLER, "grid": SMALL_GRID})
    assert cf_main.main(["actions", "--config", path]) == EXIT_OK
    rows = _read_csv(os.path.join(_out(path), "actions.csv"))
    assert len(rows) == 4
    for row in rows:
        assert float(row["nu"]) == pytest.approx(1.0, rel=1e-9)
        assert row["accurate"] == "true"


def test_arnold(write_config):
    path = write_config({"potential": KEPLER, "grid": SMALL_GRID})
    assert cf_main.main(["arnold", "--config", path]) == EXIT_OK
    summary = _read_json(os.path.join(_out(path), "arnold.json"))
    assert summary["charts"][0]["map"]["all_near_zero"] is True
    assert len(_read_csv(os.path.join(_out(path), "arnold.csv"))) == 4


def test_birkhoff(write_config):
    path = write_config({"potential": {"kind": "harmonic", "params": {"k": 1.0}}, "birkhoff": {"radii": [0.5, 2.0]}})
    assert cf_main.main(["birkhoff", "--config", path]) == EXIT_OK
    rows = _read_csv(os.path.join(_out(path), "residuals.csv"))
    assert [float(row["r0"]) for row in rows] == [0.5, 2.0]
    for row in rows:
        assert abs(float(row["res1"])) < 1e-8
    report = _read_json(os.path.join(_out(path), "birkhoff.json"))
    assert report["exponents"]["admissible"] == pytest.approx([-2.0, 1.0], abs=1e-9)


def test_nekhoroshev_is_deterministic(write_config, tmp_path):
    data = {
        "potential": LJ,
        "grid": SMALL_GRID,
        "dynamics": {"eps": [1e-2, 1e-3], "T": 20.0, "fast_slow": {"kind": "decoupled", "eps": [0.1], "T": 1.0}},
        "seed": 2,
    }
    first = write_config(dict(data, out=str(tmp_path / "one")), name="one.json")
    second = write_config(dict(data, out=str(tmp_path / "two")), name="two.json")
    assert cf_main.main(["nekhoroshev", "--config", first]) == EXIT_OK
    assert cf_main.main(["nekhoroshev", "--config", second]) == EXIT_OK
    with open(tmp_path / "one" / "drift.csv") as a, open(tmp_path / "two" / "drift.csv") as b:
        assert a.read() == b.read()
    summary = _read_json(str(tmp_path / "one" / "nekhoroshev.json"))
    assert summary["seed"] == 2
    assert summary["sweep"]["eps"] == [1e-2, 1e-3]
    assert len(summary["fast_slow"]) == 1


def test_nekhoroshev_rejects_a_missing_chart(write_config):
    path = write_config({"potential": KEPLER, "dynamics": {"chart": 5, "T": 1.0}})
    assert cf_main.main(["nekhoroshev", "--config", path]) == EXIT_CONFIG


def test_configured_tolerances_reach_the_charts():
    tolerances = {"quad_tol": 1e-9, "tol_nondeg": 1e-7, "tol_grad": 1e-8}
    config = parse_config(json.dumps({"potential": KEPLER, "tolerances": tolerances}))
    _, intervals, _, built = charts(config)
    assert [chart.quad_rtol for chart in built] == [1e-9]
    assert (intervals[0].tol_nondeg, intervals[0].tol_grad) == (1e-7, 1e-8)
