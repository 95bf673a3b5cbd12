"""
Scheme-description files: JSON with the ambient dimension, the prime and a
component list, points given by canonical coordinates.

    {"n": 3, "prime": 32003, "components": [
        {"type": "point", "point": [1, 2, 3, 4]},
        {"type": "line", "points": [[...], [...]]},
        {"type": "double_point", "point": [...], "space": [[...], ...]},
        {"type": "conic", "lines": [[[...], [...]], [[...], [...]]], "vertex": [...]},
        {"type": "sundial", "lines": [...], "vertex": [...], "space": [[...], ...]}]}
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import DegenerateInput
from .gfp import check_prime
from .geometry import Line, LinearSubspace, ProjectivePoint, SundialData
from .schemes import (
    DegenerateConic,
    DoublePointRestricted,
    LineComponent,
    Scheme,
    SimplePoint,
    Sundial,
)


def _pt(q: ProjectivePoint) -> list[int]:
    return list(q.coords)


def _line(line: Line) -> list[list[int]]:
    return [_pt(line.a), _pt(line.b)]


def component_to_dict(c) -> dict:
    if isinstance(c, SimplePoint):
        return {"type": "point", "point": _pt(c.point)}
    if isinstance(c, LineComponent):
        return {"type": "line", "points": _line(c.line)}
    if isinstance(c, DoublePointRestricted):
        return {"type": "double_point", "point": _pt(c.point),
                "space": [list(r) for r in c.space.rows]}
    if isinstance(c, DegenerateConic):
        return {"type": "conic", "lines": [_line(c.first), _line(c.second)],
                "vertex": _pt(c.vertex)}
    if isinstance(c, Sundial):
        s = c.data
        return {"type": "sundial", "lines": [_line(s.first), _line(s.second)],
                "vertex": _pt(s.vertex), "space": [list(r) for r in s.space.rows]}
    raise TypeError(f"not a scheme component: {c!r}")


def scheme_to_dict(X: Scheme) -> dict:
    return {"n": X.n, "prime": X.p, "components": [component_to_dict(c) for c in X.components]}


def component_from_dict(obj: dict, p: int):
    def pt(c):
        return ProjectivePoint(tuple(c), p)

    def ln(pair):
        return Line(pt(pair[0]), pt(pair[1]))

    kind = obj.get("type")
    if kind == "point":
        return SimplePoint(pt(obj["point"]))
    if kind == "line":
        return LineComponent(ln(obj["points"]))
    if kind == "double_point":
        return DoublePointRestricted(pt(obj["point"]), LinearSubspace.from_rows(obj["space"], p))
    if kind == "conic":
        first, second = obj["lines"]
        return DegenerateConic(ln(first), ln(second), pt(obj["vertex"]))
    if kind == "sundial":
        first, second = obj["lines"]
        return Sundial(SundialData(ln(first), ln(second), pt(obj["vertex"]),
                                   LinearSubspace.from_rows(obj["space"], p)))
    raise DegenerateInput(f"unknown component type {kind!r}")


def scheme_from_dict(obj: dict) -> Scheme:
    p = check_prime(obj["prime"])
    n = int(obj["n"])
    return Scheme(n, tuple(component_from_dict(c, p) for c in obj["components"]), p)


def load_scheme(path) -> Scheme:
    return scheme_from_dict(json.loads(Path(path).read_text()))


def dump_scheme(X: Scheme, path) -> None:
    Path(path).write_text(json.dumps(scheme_to_dict(X)) + "\n")
