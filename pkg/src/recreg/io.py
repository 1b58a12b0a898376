"""JSON instance files.

Every file is an object with a ``kind`` field.  Numbers are integers, ``"p/q"``
strings or finite decimals and are always parsed exactly; rationals are
written back as integers or ``"p/q"`` strings.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from pathlib import Path
from typing import Any

from recreg.applications import DirectionalGraph, SpiderWeb
from recreg.complex import (
    Fan,
    PointConfiguration,
    Subdivision,
    fan_from_section,
    validate_fan,
    validate_subdivision,
)
from recreg.floodlight import Assignment
from recreg.rational import parse_rational, vec
from recreg.relaxation import RelaxableSystem

FIXTURE_ENV = "RECREG_FIXTURES"
FIXTURE_DIR = Path(__file__).parent / "fixtures"


class InstanceError(ValueError):
    """Malformed instance file; ``location`` names the offending field."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


# ------------------------------------------------------------ scalars


def num(x: Fraction | int) -> int | str:
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def nums(v) -> list:
    return [num(x) for x in v]


def _vec(raw, where: str):
    if not isinstance(raw, list):
        raise InstanceError("expected a list of numbers", where)
    try:
        return vec(raw)
    except (ValueError, TypeError, ZeroDivisionError) as err:
        raise InstanceError(str(err), where) from None


def _field(d: dict, key: str, where: str):
    if key not in d:
        raise InstanceError(f"missing field {key!r}", where)
    return d[key]


def _cells(raw, where: str) -> list[list[int]]:
    if not isinstance(raw, list) or not all(isinstance(c, list) for c in raw):
        raise InstanceError("cells must be a list of index lists", where)
    for i, c in enumerate(raw):
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in c):
            raise InstanceError("cell indices must be integers", f"{where}[{i}]")
    return raw


def _wall_labels(d: dict, where: str):
    out = []
    for i, item in enumerate(d.get("wall_labels", [])):
        if not (isinstance(item, list) and len(item) == 3):
            raise InstanceError("expected [cell_a, cell_b, label]", f"{where}.wall_labels[{i}]")
        a, b, lab = item
        out.append((int(a), int(b), str(lab)))
    return out


def _normals(d: dict, where: str):
    out = []
    for i, item in enumerate(d.get("normals", [])):
        if not (isinstance(item, list) and len(item) == 3):
            raise InstanceError("expected [cell_a, cell_b, vector]", f"{where}.normals[{i}]")
        out.append((int(item[0]), int(item[1]), _vec(item[2], f"{where}.normals[{i}]")))
    return out


# ------------------------------------------------------------ decoding


def _subdivision(d: dict, where: str) -> Subdivision:
    pts = _field(d, "points", where)
    points = [_vec(p, f"{where}.points[{i}]") for i, p in enumerate(pts)]
    if "dimension" in d and any(len(p) != d["dimension"] for p in points):
        raise InstanceError("point length differs from dimension", f"{where}.points")
    cfg = PointConfiguration.make(points, d.get("labels"))
    return validate_subdivision(cfg, _cells(_field(d, "cells", where), f"{where}.cells"),
                                kind=d.get("section_kind", "points"),
                                cell_labels=d.get("cell_labels"),
                                wall_labels=_wall_labels(d, where),
                                trusted=bool(d.get("trusted", False)))


def _fan(d: dict, where: str) -> Fan:
    if "section" in d:
        s = _subdivision(d["section"], f"{where}.section")
        height = parse_rational(_field(d, "height", where))
        return fan_from_section(s, height, _normals(d, where))
    rays = [_vec(r, f"{where}.rays[{i}]") for i, r in enumerate(_field(d, "rays", where))]
    if "dimension" in d and any(len(r) != d["dimension"] for r in rays):
        raise InstanceError("ray length differs from dimension", f"{where}.rays")
    return validate_fan(rays, _cells(_field(d, "cells", where), f"{where}.cells"),
                        complete=bool(d.get("complete", False)),
                        cell_labels=d.get("cell_labels"),
                        wall_labels=_wall_labels(d, where),
                        normals=_normals(d, where),
                        trusted=bool(d.get("trusted", False)))


def _system(d: dict, where: str) -> RelaxableSystem:
    rows = [_vec(r, f"{where}.rows[{i}]") for i, r in enumerate(_field(d, "rows", where))]
    labels = d.get("labels")
    baseline = d.get("baseline", [])
    if labels is not None and baseline and isinstance(baseline[0], str):
        baseline = [labels.index(b) for b in baseline]
    return RelaxableSystem.make(rows, labels, baseline, cols=d.get("columns"))


def decode(d: Any, where: str = "$") -> Any:
    """Parse one instance object into the matching core type.

    ``points`` files decode to a tuple of vectors, ``certificate`` files to a
    dict label -> rational and ``cycle-certificates`` files to a list of
    ``(cycle, {wall label: coefficient})``.
    """
    if not isinstance(d, dict):
        raise InstanceError("instance must be a JSON object", where)
    kind = _field(d, "kind", where)
    try:
        if kind in ("pointset-subdivision", "subdivision"):
            return _subdivision(d, where)
        if kind == "fan":
            return _fan(d, where)
        if kind == "points":
            return tuple(_vec(p, f"{where}.points[{i}]") for i, p in enumerate(_field(d, "points", where)))
        if kind == "spiderweb":
            verts = [_vec(p, f"{where}.vertices[{i}]") for i, p in enumerate(_field(d, "vertices", where))]
            return SpiderWeb.make(verts, _field(d, "cables", where), d.get("pinned"))
        if kind == "digraph":
            arcs = [(a[0], a[1], _vec(a[2], f"{where}.arcs[{i}]"))
                    for i, a in enumerate(_field(d, "arcs", where))]
            return DirectionalGraph.make(int(_field(d, "vertices", where)), arcs)
        if kind == "assignment":
            return Assignment(tuple(int(x) for x in _field(d, "mapping", where)))
        if kind == "system":
            return _system(d, where)
        if kind == "certificate":
            y = _field(d, "y", where)
            if isinstance(y, dict):
                return {str(k): parse_rational(v) for k, v in y.items()}
            return [parse_rational(v) for v in y]
        if kind == "cycle-certificates":
            return [(tuple(int(v) for v in c["cycle"]),
                     {str(k): parse_rational(v) for k, v in c["terms"].items()})
                    for c in _field(d, "cycles", where)]
    except InstanceError:
        raise
    except (ValueError, TypeError, KeyError, IndexError) as err:
        raise InstanceError(str(err), where) from None
    raise InstanceError(f"unknown kind {kind!r}", f"{where}.kind")


def resolve(path: str | os.PathLike) -> Path:
    """``path`` itself if it exists, else the same name in the fixture
    directory (``$RECREG_FIXTURES`` or the bundled one)."""
    p = Path(path)
    if p.exists():
        return p
    for base in (os.environ.get(FIXTURE_ENV), FIXTURE_DIR):
        if base:
            for cand in (Path(base) / p, Path(base) / p.name):
                if cand.exists():
                    return cand
    raise InstanceError("file not found", str(path))


def read_json(path: str | os.PathLike) -> dict:
    p = resolve(path)
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as err:
        raise InstanceError(err.msg, f"{p}:{err.lineno}:{err.colno}") from None


def load(path: str | os.PathLike) -> Any:
    return decode(read_json(path), str(path))


# ------------------------------------------------------------ encoding


def encode(obj: Any) -> dict:
    """Instance object for a core value; ``decode(encode(x)) == x``."""
    if isinstance(obj, Subdivision):
        out = {"kind": "pointset-subdivision", "dimension": obj.dimension,
               "points": [nums(p) for p in obj.config.points],
               "cells": [list(c) for c in obj.cells]}
        if obj.kind != "points":
            out["section_kind"] = obj.kind
        if obj.config.labels:
            out["labels"] = list(obj.config.labels)
        if obj.cell_labels:
            out["cell_labels"] = list(obj.cell_labels)
        if obj.wall_labels:
            out["wall_labels"] = [[a, b, lab] for a, b, lab in obj.wall_labels]
        return out
    if isinstance(obj, Fan):
        out = {"kind": "fan", "dimension": obj.dimension, "complete": obj.complete,
               "rays": [nums(r) for r in obj.rays], "cells": [list(c) for c in obj.cells]}
        if obj.cell_labels:
            out["cell_labels"] = list(obj.cell_labels)
        if obj.wall_labels:
            out["wall_labels"] = [[a, b, lab] for a, b, lab in obj.wall_labels]
        if obj.normals:
            out["normals"] = [[a, b, nums(n)] for a, b, n in obj.normals]
        return out
    if isinstance(obj, SpiderWeb):
        return {"kind": "spiderweb", "vertices": [nums(p) for p in obj.vertices],
                "cables": [list(c) for c in obj.cables], "pinned": sorted(obj.pinned)}
    if isinstance(obj, DirectionalGraph):
        return {"kind": "digraph", "vertices": obj.n,
                "arcs": [[u, v, nums(h)] for u, v, h in obj.arcs]}
    if isinstance(obj, Assignment):
        return {"kind": "assignment", "mapping": list(obj.mapping)}
    if isinstance(obj, RelaxableSystem):
        return {"kind": "system", "columns": obj.matrix.cols,
                "rows": [nums(r) for r in obj.matrix.tolist()],
                "labels": list(obj.row_labels), "baseline": sorted(obj.baseline)}
    if isinstance(obj, tuple) and obj and all(isinstance(p, tuple) for p in obj):
        return {"kind": "points", "points": [nums(p) for p in obj]}
    raise TypeError(f"cannot encode {type(obj).__name__}")


def _compact(v: Any, indent: str) -> str:
    if isinstance(v, list) and v and all(isinstance(x, (list, dict)) for x in v):
        inner = ",\n".join(indent + "  " + _compact(x, indent + "  ") for x in v)
        return "[\n" + inner + "\n" + indent + "]"
    if isinstance(v, dict) and any(isinstance(x, (list, dict)) for x in v.values()):
        inner = ",\n".join(f"{indent}  {json.dumps(k)}: {_compact(x, indent + '  ')}" for k, x in v.items())
        return "{\n" + inner + "\n" + indent + "}"
    return json.dumps(v)


def dumps(d: dict) -> str:
    """Deterministic JSON text with one innermost list per line."""
    return _compact(d, "") + "\n"


def dump(obj: Any, path: str | os.PathLike) -> None:
    Path(path).write_text(dumps(encode(obj)))


def jsonable(x: Any) -> Any:
    """Report values with rationals rendered exactly."""
    if isinstance(x, Fraction):
        return num(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x, key=str) if isinstance(x, (set, frozenset)) else x
        return [jsonable(v) for v in items]
    return x
