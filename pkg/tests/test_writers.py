import json
import math

import numpy as np
import pytest

from centralforce.writers import jsonable, units_path, write_csv, write_json


def test_csv_and_units_sidecar(tmp_path):
    path = str(tmp_path / "branches.csv")
    rows = [(0.5, 0.25, 0, 1.1, "minimum", -0.6, 12.0), (0.5, 0.25, 1, 2.3, "maximum", 0.01, -0.2)]
    written, side = write_csv(path, ("p_theta", "ell", "branch", "r0", "kind", "level", "curvature"), rows)
    assert written == path
    assert side == units_path(path) == str(tmp_path / "branches.units.json")
    lines = (tmp_path / "branches.csv").read_text().splitlines()
    assert lines[0] == "p_theta,ell,branch,r0,kind,level,curvature"
    assert lines[1] == "0.5,0.25,0,1.1,minimum,-0.6,12.0"
    meta = json.loads((tmp_path / "branches.units.json").read_text())
    assert meta["columns"][3] == "r0"
    assert set(meta["units"]) == set(meta["columns"])
    assert "unknown" not in meta["units"].values()


def test_csv_cells(tmp_path):
    path = str(tmp_path / "t.csv")
    write_csv(path, ("eps", "accurate", "x"), [(np.float64(0.1), np.bool_(True), 1 / 3)])
    line = (tmp_path / "t.csv").read_text().splitlines()[1]
    assert line == "0.1,true,%r" % (1 / 3)
    with pytest.raises(ValueError):
        write_csv(path, ("a", "b"), [(1,)])


def test_json_handles_numpy_and_non_finite(tmp_path):
    obj = {"b": np.array([1.0, np.nan]), "a": (np.int64(2), math.inf, -math.inf), "c": None}
    assert jsonable(obj) == {"b": [1.0, "nan"], "a": [2, "inf", "-inf"], "c": None}
    path = write_json(str(tmp_path / "x.json"), obj)
    text = (tmp_path / "x.json").read_text()
    assert text.index('"a"') < text.index('"b"')
    assert json.loads(text)["b"][1] == "nan"
    # identical input gives identical bytes
    write_json(str(tmp_path / "y.json"), obj)
    assert (tmp_path / "y.json").read_text() == text
    assert path.endswith("x.json")
