"""Problem files and result documents.

A problem file is JSON::

    {
      "format": 1,
      "dimension": 5,
      "varieties": [{"name": "V1", "A": [[1, -1, -2, 1, 1], ...], "c": [1, 2]}],
      "query_points": [{"name": "q", "coords": ["23/2", "23/2", 5, 0, 0]}]
    }

Numbers may be JSON integers, decimal strings (``"0.25"``, ``"1e-3"``) or
fraction strings (``"p/q"``). They are stored exactly and converted to the
requested backend on demand.

In result documents exact numbers render as fraction strings and float
numbers as ``%.16e`` decimals (17 significant digits, round-trip safe).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .errors import ProblemFormatError
from .linalg import DEFAULT_TOL, Backend, Scalar, Vector
from .variety import LinearVariety, make_variety

FORMAT_VERSION = 1


def parse_number(x, where: str = "value") -> Fraction:
    if isinstance(x, bool):
        raise ProblemFormatError(f"{where}: boolean is not a number")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        # JSON decimals are read at face value
        return Fraction(repr(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ZeroDivisionError:
            raise ProblemFormatError(f"{where}: zero denominator in {x!r}") from None
        except ValueError:
            raise ProblemFormatError(f"{where}: cannot parse number {x!r}") from None
    raise ProblemFormatError(f"{where}: expected a number, got {type(x).__name__}")


def format_number(x: Scalar) -> str:
    if isinstance(x, Fraction):
        return str(x)
    return f"{float(x):.16e}"


def format_vector(v) -> list[str]:
    return [format_number(x) for x in v]


def _number_list(values, length: int, where: str) -> list[Fraction]:
    if not isinstance(values, list):
        raise ProblemFormatError(f"{where}: expected a list")
    if len(values) != length:
        raise ProblemFormatError(f"{where}: has length {len(values)}, expected {length}")
    return [parse_number(x, f"{where}[{i}]") for i, x in enumerate(values)]


@dataclass(frozen=True)
class VarietySpec:
    name: str
    A: tuple[tuple[Fraction, ...], ...]
    c: tuple[Fraction, ...]


@dataclass(frozen=True)
class ProblemFile:
    dimension: int
    varieties: dict[str, VarietySpec] = field(default_factory=dict)
    points: dict[str, tuple[Fraction, ...]] = field(default_factory=dict)

    def variety(self, name: str, backend: Backend = Backend.EXACT,
                tol: float = DEFAULT_TOL) -> LinearVariety:
        try:
            spec = self.varieties[name]
        except KeyError:
            raise ProblemFormatError(f"no variety named {name!r}") from None
        conv = (lambda x: x) if backend is Backend.EXACT else float
        return make_variety(self.dimension, [[conv(x) for x in r] for r in spec.A],
                            [conv(x) for x in spec.c], backend, tol)

    def point(self, name: str, backend: Backend = Backend.EXACT) -> Vector:
        try:
            coords = self.points[name]
        except KeyError:
            raise ProblemFormatError(f"no query point named {name!r}") from None
        v = Vector(coords, Backend.EXACT)
        return v if backend is Backend.EXACT else v.to_float()


def parse_problem(data) -> ProblemFile:
    if not isinstance(data, dict):
        raise ProblemFormatError("problem file must be a JSON object")
    if data.get("format") != FORMAT_VERSION:
        raise ProblemFormatError(f"unsupported format {data.get('format')!r}, expected 1")
    n = data.get("dimension")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ProblemFormatError("dimension must be a positive integer")

    varieties = {}
    raw = data.get("varieties", [])
    if not isinstance(raw, list):
        raise ProblemFormatError("varieties must be a list")
    for k, entry in enumerate(raw):
        if not isinstance(entry, dict) or not isinstance(entry.get("name"), str):
            raise ProblemFormatError(f"variety #{k} needs a string name")
        name = entry["name"]
        if name in varieties:
            raise ProblemFormatError(f"duplicate variety name {name!r}")
        rows = entry.get("A")
        if not isinstance(rows, list) or not rows:
            raise ProblemFormatError(f"variety {name!r}: A must be a nonempty list of rows")
        A = tuple(tuple(_number_list(r, n, f"variety {name!r} row {i}"))
                  for i, r in enumerate(rows))
        c = tuple(_number_list(entry.get("c"), len(A), f"variety {name!r} c"))
        varieties[name] = VarietySpec(name, A, c)

    points = {}
    raw = data.get("query_points", [])
    if not isinstance(raw, list):
        raise ProblemFormatError("query_points must be a list")
    for k, entry in enumerate(raw):
        if not isinstance(entry, dict) or not isinstance(entry.get("name"), str):
            raise ProblemFormatError(f"query point #{k} needs a string name")
        name = entry["name"]
        if name in points:
            raise ProblemFormatError(f"duplicate point name {name!r}")
        points[name] = tuple(_number_list(entry.get("coords"), n, f"point {name!r}"))
    return ProblemFile(n, varieties, points)


def load_problem(path) -> ProblemFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ProblemFormatError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFormatError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return parse_problem(data)


def _dump(value, depth: int) -> str:
    pad = "  " * (depth + 1)
    end = "  " * depth
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_dump(v, depth + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
        items = [pad + _dump(v, depth + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    return json.dumps(value, ensure_ascii=False)


def render_json(doc: dict) -> str:
    """Indented JSON with scalar lists kept on one line."""
    return _dump(doc, 0) + "\n"


def _flatten(prefix: str, value, out: list[str]) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else k, v, out)
    elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, out)
    elif isinstance(value, list):
        out.append(f"{prefix}: ({', '.join(str(v) for v in value)})")
    else:
        out.append(f"{prefix}: {value if value is not None else '-'}")


def render_text(doc: dict) -> str:
    lines: list[str] = []
    _flatten("", doc, lines)
    return "\n".join(lines) + "\n"
