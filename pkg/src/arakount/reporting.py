"""JSON / CSV / text serialization of results."""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
from fractions import Fraction

import numpy as np

from .errors import InvalidParams
from .heights import ProjectivePoint
from .polynomial import HomogeneousPolynomial

SCHEMA = "arakount/1"


def to_plain(obj):
    """Convert results into dicts, lists, str, int, float, bool and None."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, ProjectivePoint):
        return [to_plain(c) for c in obj.coords]
    if isinstance(obj, HomogeneousPolynomial):
        return obj.to_text()
    if hasattr(obj, "to_dict"):
        return to_plain(obj.to_dict())
    if hasattr(obj, "_asdict"):
        return to_plain(obj._asdict())
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {_key(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset, np.ndarray)):
        return [to_plain(v) for v in obj]
    return str(obj)


def _key(k):
    if isinstance(k, str):
        return k
    if isinstance(k, tuple):
        return "[" + ":".join(str(to_plain(c)) for c in k) + "]"
    return str(to_plain(k))


def _float_text(x):
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    text = format(x, ".12g")
    if not any(ch in text for ch in ".eE"):
        text += ".0"
    return text


def _dump(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return json.dumps(obj)
    if isinstance(obj, float):
        return _float_text(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_dump(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if not obj:
        return "[]"
    if all(isinstance(v, (int, str, float)) and not isinstance(v, bool) for v in obj):
        return "[" + ", ".join(_dump(v, indent, level) for v in obj) + "]"
    items = [pad + _dump(v, indent, level + 1) for v in obj]
    return "[\n" + ",\n".join(items) + "\n" + end + "]"


def to_json(result, indent=2):
    body = to_plain(result)
    if not isinstance(body, dict):
        body = {"result": body}
    doc = {"schema": SCHEMA}
    doc.update((k, v) for k, v in body.items() if k != "schema")
    return _dump(doc, indent, 0) + "\n"


def to_csv(rows, header):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([to_plain(c) for c in row])
    return buf.getvalue()


def to_text(result):
    body = to_plain(result)
    lines = []

    def walk(prefix, value):
        if isinstance(value, dict):
            for k, v in value.items():
                walk(f"{prefix}.{k}" if prefix else k, v)
        elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
            for i, v in enumerate(value):
                walk(f"{prefix}[{i}]", v)
        else:
            if isinstance(value, float):
                value = format(value, ".12g")
            lines.append(f"{prefix}: {value}")

    walk("", body)
    return "\n".join(lines) + "\n"


def emit_report(result, fmt="json", table=None) -> bytes:
    """Serialize ``result``; ``table`` = (header, rows) is required for CSV."""
    if fmt == "json":
        return to_json(result).encode()
    if fmt == "text":
        return to_text(result).encode()
    if fmt == "csv":
        if table is None:
            if hasattr(result, "points") and hasattr(result, "bound"):
                table = (["x", "y", "z"], [p.coords for p in result.points])
            else:
                raise InvalidParams("csv output is only available for tabular results")
        header, rows = table
        return to_csv(rows, header).encode()
    raise InvalidParams(f"unknown format {fmt!r}")
