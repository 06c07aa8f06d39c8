"""Deterministic output formatting for CLI reports."""
from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Mapping, Sequence


def format_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError(f"non-finite value {x!r} cannot be serialized")
    return format(x, ".17g")


def to_json(obj: Any) -> str:
    """JSON with key order as given and floats at 17 significant digits."""
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, (int, str)):
        return json.dumps(obj)
    if isinstance(obj, Mapping):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(to_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _cell(v: Any) -> str:
    if isinstance(v, float):
        return format_float(v)
    if isinstance(v, (list, tuple)):
        return ";".join(_cell(x) for x in v)
    if isinstance(v, Mapping):
        return ";".join(f"{k}={_cell(x)}" for k, x in v.items())
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def to_csv(rows: Sequence[Mapping[str, Any]]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(rows[0]))
    for row in rows:
        writer.writerow([_cell(v) for v in row.values()])
    return buf.getvalue()


def to_human(obj: Mapping[str, Any]) -> str:
    width = max((len(k) for k in obj), default=0)
    lines = []
    for k, v in obj.items():
        text = to_json(v) if isinstance(v, (dict, list, tuple)) else _cell(v)
        lines.append(f"{k.ljust(width)}  {text}")
    return "\n".join(lines) + "\n"
