"""JSON file formats.

Configuration::

    {"role": "primal" | "transform", "dim": 2,
     "vectors": [["1", "0"], ["0", "1"], ["1/2", "1"]]}

Rationals are strings ("p/q", integers, or exact decimals such as "0.25").
Family files are JSON lists of 1-based index lists.  Every index written
by this module is 1-based; the Python API is 0-based.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .core import PRIMAL, TRANSFORM, CsConfiguration, NeighborlinessReport
from .errors import ParseError, RankDeficient
from .lp import as_fraction


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def dumps(obj: Any, indent: int = 2, _level: int = 0) -> str:
    """JSON with one line per list of scalars (vectors and index sets stay readable)."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict) and obj:
        items = [f"{pad}{json.dumps(k)}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list) and any(isinstance(x, (list, dict)) for x in obj):
        items = [pad + dumps(x, indent, _level + 1) for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    return json.dumps(obj)


def configuration_to_dict(c: CsConfiguration) -> dict:
    return {
        "role": c.role,
        "dim": c.dim,
        "vectors": [[fraction_str(x) for x in v] for v in c.vectors],
    }


def configuration_from_dict(obj: Any) -> CsConfiguration:
    if not isinstance(obj, dict):
        raise ParseError("configuration must be a JSON object")
    try:
        role = obj["role"]
        dim = obj["dim"]
        vectors = obj["vectors"]
    except KeyError as exc:
        raise ParseError(f"missing key {exc.args[0]!r}") from exc
    if role not in (PRIMAL, TRANSFORM):
        raise ParseError(f"role must be 'primal' or 'transform', got {role!r}")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise ParseError("dim must be a nonnegative integer")
    if not isinstance(vectors, list) or not all(isinstance(v, list) for v in vectors):
        raise ParseError("vectors must be a list of lists")
    rows = []
    for v in vectors:
        row = []
        for x in v:
            if isinstance(x, bool) or not isinstance(x, (str, int)):
                raise ParseError(f"entries must be strings or integers, got {x!r}")
            row.append(as_fraction(x))
        rows.append(row)
    try:
        return CsConfiguration(dim, rows, role)
    except RankDeficient:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def load_configuration(path: str | Path) -> CsConfiguration:
    try:
        obj = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc
    return configuration_from_dict(obj)


def save_configuration(c: CsConfiguration, path: str | Path) -> None:
    Path(path).write_text(dumps(configuration_to_dict(c)) + "\n")


def load_family(path: str | Path) -> list[tuple[int, ...]]:
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read family file {path}: {exc}") from exc
    if not isinstance(obj, list) or not all(
        isinstance(a, list) and all(isinstance(i, int) and i >= 1 for i in a) for a in obj
    ):
        raise ParseError("family must be a list of lists of positive integers")
    return [tuple(sorted(i - 1 for i in a)) for a in obj]


def family_to_json(members) -> list[list[int]]:
    return [[i + 1 for i in a] for a in members]


def report_to_dict(rep: NeighborlinessReport, m: int) -> dict:
    out: dict[str, Any] = {
        "m": m,
        "k_max": rep.k_max,
        "exact": rep.exact,
        "min_dominant": rep.min_dominant,
        "method": rep.method,
    }
    w = rep.witness
    if w is not None:
        out["witness"] = {
            "subset": [i + 1 for i in w.subset],
            "sigma": list(w.sigma),
            "u": [fraction_str(x) for x in w.u],
        }
    if rep.failing_subset is not None:
        fs = rep.failing_subset
        out["failing_subset"] = {"indices": [i + 1 for i in fs.indices], "signs": list(fs.signs)}
    if rep.warnings:
        out["warnings"] = list(rep.warnings)
    return out
