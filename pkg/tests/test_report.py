import json

import jsonschema
import numpy as np
import pytest

from ffdist.report import (
    LINE_SCHEMA, Check, data_section, footer, header, plain, read_json, render, render_csv, render_json,
)


def sample_checks():
    return [
        Check(1, "sphere", "q03-d2-t1", "pass", {"size": np.int64(4), "ratio": np.float64(0.5)}, elapsed=0.25),
        Check(7, "chain_theorem", "q03-d2-full", "vacuous", {"ts": (1, 1), "big": 2 ** 70}, timing={"x": 1.0}),
    ]


def test_check_rejects_unknown_status():
    with pytest.raises(ValueError):
        Check(1, "x", "y", "maybe", {})


def test_plain_conversions():
    assert plain({"a": np.int32(3), "b": (1, np.float32(0.5)), "c": np.array([1, 2])}) == {
        "a": 3, "b": [1, 0.5], "c": [1, 2]}
    assert plain(float("inf")) == "inf"
    assert plain(np.bool_(True)) is True
    assert plain(1 + 2j) == [1.0, 2.0]


def test_json_lines_validate():
    text = render_json(sample_checks(), header("sphere", {"q": 3}, "python"))
    rows = read_json(text)
    assert [r["section"] for r in rows] == ["header", "data", "data", "timings"]
    for row in rows:
        jsonschema.validate(row, LINE_SCHEMA)
    assert rows[2]["values"]["big"] == 2 ** 70
    assert rows[-1]["checks"][1]["detail"] == {"x": 1.0}


def test_floats_keep_full_precision():
    x = 1 / 3
    text = render_json([Check(0, "c", "i", "pass", {"x": x})], header("c", {}, "python"))
    assert read_json(text)[1]["values"]["x"] == x


def test_csv_has_same_fields():
    checks = sample_checks()
    text = render_csv(checks, header("sphere", {}, "compiled"))
    lines = text.splitlines()
    assert lines[0].startswith("# {") and lines[-1].startswith("# {")
    assert lines[1] == "criterion,check,instance,status,values"
    assert json.loads(lines[2].split(",", 4)[4].strip('"').replace('""', '"'))["size"] == 4


def test_data_section_ignores_metadata():
    checks = sample_checks()
    a = render(checks, header("a", {}, "python"), "json")
    b = render(checks, {**header("a", {}, "python"), "created": "other"}, "json")
    assert a != b
    assert data_section(a) == data_section(b)
    c = render(checks, header("a", {}, "python"), "csv")
    assert "created" not in data_section(c)
    with pytest.raises(ValueError):
        render(checks, {}, "xml")


def test_footer_totals():
    f = footer(sample_checks())
    assert f["total_seconds"] == pytest.approx(0.25)
