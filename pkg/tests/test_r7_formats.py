"""
R7 — Exact encodings and report formats
Highlights:
- Scalars read from JSON integers or "p/q+r/si" text; floats and malformed text are rejected.
- Domain objects parse from their JSON shapes with field-level errors.
- Reports dump to json, csv and text without losing exactness.
"""
import json
from fractions import Fraction

import pytest

from errors import InvalidInputError
from exact_core import BinaryForm, GaussianRational, QuaternionValue
from formats import (
    dump_report,
    example_payloads,
    load_json,
    parse_curve,
    parse_form,
    parse_line,
    parse_module,
    parse_quat_tuple,
    parse_resolution,
    parse_scalar,
    parse_section,
    parse_vector,
    to_jsonable,
)
from kronecker_core import CertificateKind

# --- scalars -----------------------------------------------------------------

@pytest.mark.parametrize(
    "text, expected",
    [
        ("3", GaussianRational(3)),
        ("-1/2", GaussianRational(Fraction(-1, 2))),
        ("i", GaussianRational(0, 1)),
        ("-i", GaussianRational(0, -1)),
        ("-3/4i", GaussianRational(0, Fraction(-3, 4))),
        ("1/3-2/5i", GaussianRational(Fraction(1, 3), Fraction(-2, 5))),
        ("3+i", GaussianRational(3, 1)),
        (" 2 - 7i ", GaussianRational(2, -7)),
        (5, GaussianRational(5)),
    ],
)
def test_parse_scalar(text, expected):
    assert parse_scalar(text) == expected


@pytest.mark.parametrize("bad", [0.5, "1.5", "1/0", "two", "", None, True, [1]])
def test_parse_scalar_rejects(bad):
    with pytest.raises(InvalidInputError):
        parse_scalar(bad)


def test_scalar_text_round_trips_through_str():
    z = GaussianRational(Fraction(7, 3), Fraction(-1, 9))
    assert parse_scalar(str(z)) == z


def test_parse_vector_checks_length():
    assert parse_vector(["1", "i"], 2) == (GaussianRational(1), GaussianRational(0, 1))
    with pytest.raises(InvalidInputError):
        parse_vector(["1", "i"], 3)
    with pytest.raises(InvalidInputError):
        parse_vector("1,2")

# --- domain objects ----------------------------------------------------------

def test_parse_form_and_errors():
    form = parse_form({"degree": 2, "coeffs": ["1", "0", "-1"]})
    assert form == BinaryForm(2, [1, 0, -1])
    with pytest.raises(InvalidInputError):
        parse_form({"degree": 2, "coeffs": ["1", "0"]})
    with pytest.raises(InvalidInputError):
        parse_form({"coeffs": ["1"]})
    with pytest.raises(InvalidInputError):
        parse_form({"degree": "2", "coeffs": ["1", "0", "0"]})


def test_parse_curve_example(twisted_cubic):
    assert parse_curve(example_payloads()["curve"]) == twisted_cubic
    with pytest.raises(InvalidInputError):
        parse_curve({"ambient": 3, "degree": 3, "phi": "x0^3"})


def test_parse_resolution():
    payload = {
        "source_twists": [0],
        "target_twists": [1, 1],
        "matrix": [[{"degree": 1, "coeffs": ["1", "0"]}], [{"degree": 1, "coeffs": ["0", "1"]}]],
    }
    res = parse_resolution(payload)
    assert res.rank == 1
    with pytest.raises(InvalidInputError):
        parse_resolution({"source_twists": [0], "target_twists": [1, 1], "matrix": "[]"})


def test_parse_module():
    km = parse_module({"maps": [[["1"], ["0"]], [["0"], ["1"]]]})
    assert (km.r, km.k, km.n) == (2, 1, 2)
    with pytest.raises(InvalidInputError):
        parse_module({"maps": [[["1"], ["0"]], [["0", "1"]]]})


def test_parse_line_accepts_both_shapes():
    line, real_data = parse_line(example_payloads()["line"])
    assert real_data is not None
    assert line.b == (GaussianRational(0), GaussianRational(1), GaussianRational(0), GaussianRational(0))
    raw, none = parse_line({"a": [1, 0, 0, 0], "b": [0, 1, 0, 0], "c": [0, 0, 1, 0], "d": [0, 0, 0, 1]})
    assert none is None
    assert raw.d == (0, 0, 0, 1)


def test_parse_quaternion_data():
    t = parse_quat_tuple({"q0": ["1", "0"], "q1": ["0", "1"], "p0": ["i", "0"], "p1": ["0", "0"]})
    assert t.q1 == QuaternionValue(0, 1)
    with pytest.raises(InvalidInputError):
        parse_quat_tuple({"q0": ["1", "0"]})


def test_parse_section():
    assert parse_section(example_payloads()["section"]).c.is_zero
    with pytest.raises(InvalidInputError):
        parse_section({"coords": ["1", "0", "0"]})

# --- files -------------------------------------------------------------------

def test_load_json_errors(tmp_path):
    with pytest.raises(InvalidInputError):
        load_json(tmp_path / "missing.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(InvalidInputError):
        load_json(broken)


def test_load_json_reads_payload(write_json):
    path = write_json("section.json", {"coords": ["1", "0", "0", "1", "0"]})
    assert load_json(path) == {"coords": ["1", "0", "0", "1", "0"]}

# --- reports -----------------------------------------------------------------

def test_to_jsonable_keeps_exact_values():
    report = {
        "h": Fraction(1, 3),
        "z": GaussianRational(0, 2),
        "q": QuaternionValue(1, GaussianRational(0, 1)),
        "kind": CertificateKind.EXACT_PASS,
        "split": {1: 6},
        "form": BinaryForm.x1(),
    }
    assert to_jsonable(report) == {
        "h": "1/3",
        "z": "2i",
        "q": ["1", "i"],
        "kind": "exact_pass",
        "split": {"1": 6},
        "form": {"degree": 1, "coeffs": ["0", "1"]},
    }


def test_to_jsonable_rejects_floats():
    with pytest.raises(InvalidInputError):
        to_jsonable({"x": 0.5})


def test_dump_json_is_sorted():
    text = dump_report({"status": "ok", "seed": 3, "h0": [12, 6, 0]})
    assert json.loads(text) == {"status": "ok", "seed": 3, "h0": [12, 6, 0]}
    assert text.index('"h0"') < text.index('"seed"') < text.index('"status"')


def test_dump_csv_uses_rows():
    report = {"status": "ok", "rows": [{"twist": 0, "h0": 12, "h1": 0}, {"twist": 1, "h0": 14, "h1": 0}]}
    lines = dump_report(report, "csv").splitlines()
    assert lines == ["h0,h1,twist", "12,0,0", "14,0,1"]


def test_dump_text_and_unknown_format():
    text = dump_report({"status": "ok", "splitting": [5, 5]}, "text")
    assert text.splitlines() == ["splitting: 5;5", "status: ok"]
    with pytest.raises(InvalidInputError):
        dump_report({}, "yaml")
