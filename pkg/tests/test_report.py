import json
from dataclasses import dataclass
from enum import Enum

import numpy as np

from cmpatterns.report import (canonical_json, jsonable, svg_line_plot,
                               write_csv, write_json, write_svg)


class Color(Enum):
    RED = "red"


@dataclass
class Point:
    x: float
    y: np.ndarray


def test_jsonable_conversions():
    obj = {
        "enum": Color.RED,
        "arr": np.array([1.5, 2.5]),
        "np_int": np.int64(7),
        "np_float": np.float64(0.25),
        "np_bool": np.bool_(True),
        "tuple": (1, 2),
        "dc": Point(x=1.0, y=np.array([3.0])),
        "inf": np.inf,
        "ninf": -np.inf,
        "nan": np.nan,
    }
    out = jsonable(obj)
    assert out["enum"] == "red"
    assert out["arr"] == [1.5, 2.5]
    assert out["np_int"] == 7 and isinstance(out["np_int"], int)
    assert out["np_float"] == 0.25 and isinstance(out["np_float"], float)
    assert out["np_bool"] is True
    assert out["tuple"] == [1, 2]
    assert out["dc"] == {"x": 1.0, "y": [3.0]}
    assert out["inf"] == "inf" and out["ninf"] == "-inf" and out["nan"] == "nan"
    json.dumps(out)  # strict-JSON serializable


def test_canonical_json_sorted_stable():
    a = canonical_json({"b": 1, "a": [2, 3]})
    b = canonical_json({"a": [2, 3], "b": 1})
    assert a == b
    assert a.endswith("\n")
    assert a.index('"a"') < a.index('"b"')


def test_write_json_round_trip(tmp_path):
    path = tmp_path / "r.json"
    write_json(path, {"x": np.float64(1.5), "bad": np.nan})
    text = path.read_text(encoding="utf-8")
    assert json.loads(text) == {"x": 1.5, "bad": "nan"}
    write_json(path, {"x": np.float64(1.5), "bad": np.nan})
    assert path.read_text(encoding="utf-8") == text  # byte stable


def test_write_csv_repr_floats(tmp_path):
    path = tmp_path / "t.csv"
    write_csv(path, ["x", "val", "name"], [[1, 0.1, "a"], [2, np.float64(0.25), "b"]])
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "x,val,name"
    assert lines[1] == "1,0.1,a"
    assert lines[2] == "2,0.25,b"


def test_svg_basic_structure(tmp_path):
    xs = np.linspace(0, 1, 20)
    svg = svg_line_plot([("one", xs, np.sin(xs)), ("two", xs, np.cos(xs))],
                        title="demo", x_label="x", y_label="y")
    assert svg.startswith("<svg ")
    assert svg.rstrip().endswith("</svg>")
    assert svg.count("<polyline") == 2
    assert "demo" in svg and "one" in svg and "two" in svg
    assert "#1f77b4" in svg and "#d62728" in svg
    path = tmp_path / "p.svg"
    write_svg(path, svg)
    assert path.read_text(encoding="utf-8") == svg


def test_svg_breaks_at_nonfinite_and_window():
    xs = np.arange(7.0)
    ys = np.array([1.0, 2.0, np.nan, 3.0, 4.0, np.inf, 5.0])
    svg = svg_line_plot([("", xs, ys)])
    # nan and inf split the line; the stranded last point draws as a dot
    assert svg.count("<polyline") == 2
    assert svg.count("<circle") == 1
    ys2 = np.array([1.0, 2.0, 50.0, 3.0, 4.0, 60.0, 5.0])
    svg2 = svg_line_plot([("", xs, ys2)], y_window=(0.0, 10.0))
    assert svg2.count("<polyline") == 2
    assert svg2.count("<circle") == 1


def test_svg_single_point_becomes_circle():
    svg = svg_line_plot([("", [0.0, 1.0, 2.0], [np.nan, 7.0, np.nan])])
    assert "<circle" in svg
    assert "<polyline" not in svg


def test_svg_deterministic():
    xs = np.linspace(0, 2, 15)
    s1 = svg_line_plot([("a", xs, xs**2)], title="t")
    s2 = svg_line_plot([("a", xs, xs**2)], title="t")
    assert s1 == s2
