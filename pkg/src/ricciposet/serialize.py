"""JSON/CSV encoding of posets, maps, reports and verification records.

Rationals always travel as ``{"num": int, "den": int}``; CSV cells use ``num/den``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, is_dataclass
from fractions import Fraction
from typing import Any

from .complexes import PolyMap, SimplicialComplex2
from .curvature import CurvatureReport
from .poset import Poset, build_poset


class ParseError(ValueError):
    """Input is not valid JSON or does not follow the expected schema."""


def rational(x: Fraction | int) -> dict[str, int]:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def parse_rational(obj: dict) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))


def to_jsonable(obj: Any) -> Any:
    """Recursively convert records to JSON types, rationals to num/den pairs."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, Fraction)):
        return rational(obj) if isinstance(obj, Fraction) else obj
    if is_dataclass(obj):
        return to_jsonable(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), indent=2) + "\n"


def _load(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc


def poset_from_json(text: str) -> Poset:
    data = _load(text)
    if not isinstance(data, dict) or not isinstance(data.get("elements"), list) \
            or not isinstance(data.get("covers", []), list):
        raise ParseError('poset JSON needs "elements" (list) and "covers" (list of pairs)')
    covers = data.get("covers", [])
    if any(not isinstance(c, list) or len(c) != 2 for c in covers):
        raise ParseError("every cover must be a [lower, upper] pair")
    return build_poset([str(x) for x in data["elements"]], [(str(a), str(b)) for a, b in covers])


def poset_to_json(p: Poset) -> dict:
    covers = sorted(p.covers, key=lambda c: (p.position(c[0]), p.position(c[1])))
    return {"elements": list(p.elements), "covers": [list(c) for c in covers]}


def map_from_json(text: str) -> PolyMap:
    data = _load(text)
    faces = data.get("faces") if isinstance(data, dict) else None
    if not isinstance(faces, list) or any(not isinstance(f, list) for f in faces):
        raise ParseError('map JSON needs "faces": a list of vertex lists')
    return PolyMap(tuple(tuple(str(v) for v in f) for f in faces))


def simplicial_from_json(text: str) -> SimplicialComplex2:
    data = _load(text)
    simplices = data.get("simplices") if isinstance(data, dict) else None
    if not isinstance(simplices, list) or any(not isinstance(s, list) for s in simplices):
        raise ParseError('simplicial JSON needs "simplices": a list of vertex lists')
    return SimplicialComplex2.from_simplices(simplices)


def report_to_json(report: CurvatureReport) -> dict:
    return {
        "kinds": report.kinds,
        "values": {k: {x: rational(v) for x, v in vals.items()} for k, vals in report.values.items()},
        "aggregates": {k: rational(v) for k, v in report.aggregates.items()},
        "verdicts": dict(report.verdicts),
    }


def report_to_csv(report: CurvatureReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["kind", "element", "rank", "value"])
    for kind, vals in report.values.items():
        for x, v in vals.items():
            writer.writerow([kind, x, report.ranks.get(x, ""), f"{v.numerator}/{v.denominator}"])
    return buf.getvalue()


def records_to_csv(rows: list[dict]) -> str:
    """Flat key/value CSV for verification and classification output."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["key", "value"])
    for row in rows:
        for key, value in row.items():
            if isinstance(value, Fraction):
                value = f"{value.numerator}/{value.denominator}"
            elif isinstance(value, dict) and set(value) == {"num", "den"}:
                value = f"{value['num']}/{value['den']}"
            elif isinstance(value, (list, dict)):
                value = json.dumps(value)
            writer.writerow([key, value])
    return buf.getvalue()
