"""
Formats Module - exact text encodings and JSON file handling
Every number crossing a file or HTTP boundary is an exact scalar string
("p/q", "p/q+r/si", "i", "-3/4i"); floats are rejected on input.
"""

import csv
import dataclasses
import io
import json
import re
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List

from blowup_example import BlowupSection
from errors import InvalidInputError
from exact_core import (
    BinaryForm,
    ExactMatrix,
    GaussianRational,
    QuaternionValue,
    Vector,
)
from kronecker_core import KroneckerModule
from p1_bundles import SteinerResolution
from quadric_twistor import QuadricLine, QuatTuple, real_line
from rational_curves import RationalCurve

_RATIONAL = r"\d+(?:/\d+)?"
_PURE_IMAGINARY = re.compile(rf"^(?P<im>[+-]?(?:{_RATIONAL})?)i$")
_GENERAL = re.compile(rf"^(?P<re>[+-]?{_RATIONAL})(?:(?P<im>[+-](?:{_RATIONAL})?)i)?$")


def _rational(text: str) -> Fraction:
    if text in ("", "+"):
        return Fraction(1)
    if text == "-":
        return Fraction(-1)
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise InvalidInputError(f"Zero denominator in scalar {text!r}.")


def parse_scalar(value) -> GaussianRational:
    """Parse an exact scalar from a JSON integer or the text encoding."""
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise InvalidInputError(f"Scalars must be exact, got {value!r}.")
    if isinstance(value, int):
        return GaussianRational(value)
    if not isinstance(value, str):
        raise InvalidInputError(f"Cannot read {value!r} as a scalar.")
    text = value.replace(" ", "")
    match = _PURE_IMAGINARY.match(text)
    if match:
        return GaussianRational(0, _rational(match.group("im")))
    match = _GENERAL.match(text)
    if not match:
        raise InvalidInputError(f"Malformed scalar {value!r}.")
    re_part = _rational(match.group("re"))
    im_text = match.group("im")
    return GaussianRational(re_part, _rational(im_text) if im_text is not None else 0)


def format_scalar(z) -> str:
    return str(z)


def parse_vector(values, length: int = None) -> Vector:
    if not isinstance(values, (list, tuple)):
        raise InvalidInputError(f"Expected a list of scalars, got {values!r}.")
    vec = tuple(parse_scalar(v) for v in values)
    if length is not None and len(vec) != length:
        raise InvalidInputError(f"Expected {length} scalars, got {len(vec)}.")
    return vec


def _require(obj: Dict, *keys: str) -> None:
    if not isinstance(obj, dict):
        raise InvalidInputError("Expected a JSON object.")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise InvalidInputError(f"Missing field(s): {', '.join(missing)}.")


def _integer(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidInputError(f"{name} must be an integer.")
    return value


# ---------------------------------------------------------------------------
# Domain objects
# ---------------------------------------------------------------------------

def parse_form(obj) -> BinaryForm:
    """{"degree": d, "coeffs": [scalar, ...]} with coeffs[i] on x0^(d-i) x1^i."""
    _require(obj, "degree", "coeffs")
    degree = _integer(obj["degree"], "degree")
    if degree < 0:
        raise InvalidInputError("Form degree must be nonnegative.")
    return BinaryForm(degree, parse_vector(obj["coeffs"], degree + 1))


def form_to_json(form: BinaryForm) -> Dict[str, Any]:
    return {"degree": form.degree, "coeffs": [format_scalar(c) for c in form.coeffs]}


def parse_curve(obj):
    _require(obj, "ambient", "degree", "phi")
    n = _integer(obj["ambient"], "ambient")
    d = _integer(obj["degree"], "degree")
    if not isinstance(obj["phi"], list):
        raise InvalidInputError("phi must be a list of forms.")
    return RationalCurve(n, d, tuple(parse_form(f) for f in obj["phi"]))


def curve_to_json(curve) -> Dict[str, Any]:
    return {"ambient": curve.n, "degree": curve.d, "phi": [form_to_json(f) for f in curve.phi]}


def parse_resolution(obj):
    """{"source_twists": [...], "target_twists": [...], "matrix": [[form, ...], ...]}"""
    _require(obj, "source_twists", "target_twists", "matrix")
    source = [_integer(e, "twist") for e in obj["source_twists"]]
    target = [_integer(f, "twist") for f in obj["target_twists"]]
    if not isinstance(obj["matrix"], list) or not all(isinstance(row, list) for row in obj["matrix"]):
        raise InvalidInputError("matrix must be a list of rows.")
    rows = tuple(tuple(parse_form(f) for f in row) for row in obj["matrix"])
    return SteinerResolution(tuple(source), tuple(target), rows)


def resolution_to_json(res) -> Dict[str, Any]:
    return {
        "source_twists": list(res.source_twists),
        "target_twists": list(res.target_twists),
        "matrix": [[form_to_json(f) for f in row] for row in res.matrix],
    }


def parse_matrix(rows) -> ExactMatrix:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise InvalidInputError("A matrix is a nonempty list of rows.")
    width = len(rows[0])
    return ExactMatrix([parse_vector(r, width) for r in rows], len(rows), width)


def parse_module(obj):
    """{"maps": [matrix, ...]} with every matrix n x k."""
    _require(obj, "maps")
    if not isinstance(obj["maps"], list):
        raise InvalidInputError("maps must be a list of matrices.")
    return KroneckerModule.from_maps([parse_matrix(m) for m in obj["maps"]])


def parse_line(obj):
    """Returns (line, real_data) where real_data is (x, y) for {"x", "y"} input."""
    if isinstance(obj, dict) and "x" in obj:
        _require(obj, "x", "y")
        x, y = parse_vector(obj["x"], 4), parse_vector(obj["y"], 4)
        return real_line(x, y), (x, y)
    _require(obj, "a", "b", "c", "d")
    return QuadricLine(*(parse_vector(obj[k], 4) for k in "abcd")), None


def parse_quaternion(value) -> QuaternionValue:
    """[a, b] for a + b j."""
    a, b = parse_vector(value, 2)
    return QuaternionValue(a, b)


def parse_quat_tuple(obj):
    _require(obj, "q0", "q1", "p0", "p1")
    return QuatTuple(*(parse_quaternion(obj[k]) for k in ("q0", "q1", "p0", "p1")))


def parse_section(obj):
    _require(obj, "coords")
    return BlowupSection(parse_vector(obj["coords"], 5))


# ---------------------------------------------------------------------------
# Files and report emission
# ---------------------------------------------------------------------------

def load_json(path) -> Any:
    try:
        with Path(path).open(encoding="utf-8") as handle:
            return json.load(handle)
    except FileNotFoundError:
        raise InvalidInputError(f"No such file: {path}.")
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"Malformed JSON in {path}: {exc.msg}.")


def to_jsonable(value) -> Any:
    """Exact, JSON-ready view of report values; dict keys become strings."""
    if isinstance(value, Enum):
        return value.value
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, (Fraction, GaussianRational)):
        return format_scalar(value)
    if isinstance(value, BinaryForm):
        return form_to_json(value)
    if isinstance(value, ExactMatrix):
        return [[format_scalar(x) for x in row] for row in value.entries]
    if isinstance(value, QuaternionValue):
        return [format_scalar(value.a), format_scalar(value.b)]
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: to_jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, BlowupSection):
        return [format_scalar(x) for x in value.coords]
    raise InvalidInputError(f"Cannot encode {type(value).__name__} in a report.")


def _cell(value) -> str:
    if isinstance(value, (list, tuple)):
        return ";".join(_cell(v) for v in value)
    if isinstance(value, dict):
        return ";".join(f"{k}={_cell(v)}" for k, v in value.items())
    return "" if value is None else str(value)


def _csv_rows(report: Dict[str, Any]) -> List[Dict[str, Any]]:
    rows = report.get("rows")
    if isinstance(rows, list) and rows and all(isinstance(r, dict) for r in rows):
        return rows
    return [report]


def dump_report(report: Dict[str, Any], fmt: str = "json") -> str:
    report = to_jsonable(report)
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2)
    if fmt == "csv":
        rows = _csv_rows(report)
        header: List[str] = sorted({k for row in rows for k in row})
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(row.get(k)) for k in header])
        return buffer.getvalue().rstrip("\n")
    if fmt == "text":
        return "\n".join(f"{k}: {_cell(report[k])}" for k in sorted(report))
    raise InvalidInputError(f"Unknown output format {fmt!r}.")


def write_report(text: str, path) -> None:
    Path(path).write_text(text + "\n", encoding="utf-8")


def example_payloads() -> Dict[str, Dict[str, Any]]:
    """Small ready-made inputs for the HTTP index and documentation."""
    return {
        "curve": {
            "ambient": 3,
            "degree": 3,
            "phi": [
                {"degree": 3, "coeffs": ["1", "0", "0", "0"]},
                {"degree": 3, "coeffs": ["0", "1", "0", "0"]},
                {"degree": 3, "coeffs": ["0", "0", "1", "0"]},
                {"degree": 3, "coeffs": ["0", "0", "0", "1"]},
            ],
        },
        "line": {"x": ["1", "0", "0", "0"], "y": ["0", "1", "0", "0"]},
        "section": {"coords": ["1", "0", "0", "1", "0"]},
    }
