"""Deterministic JSON/CSV output and matrix/vector file input.

Floats are written with 17 significant digits so that reports round-trip
exactly and golden files compare byte for byte.  Dict order is preserved
as given, which fixes the field order.
"""

import io
import json
import math

import numpy as np

from .errors import DimensionError


def fmt_float(x):
    x = float(x)
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    if x == 0.0:
        x = 0.0  # drop the sign of negative zero
    return format(x, ".17g")


def _write(obj, out, indent, level):
    pad = "\n" + " " * (indent * (level + 1)) if indent else ""
    end = "\n" + " " * (indent * level) if indent else ""
    sep = ", " if not indent else ","
    if obj is None:
        out.write("null")
    elif isinstance(obj, (bool, np.bool_)):
        out.write("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.write(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.write(fmt_float(obj))
    elif isinstance(obj, str):
        out.write(json.dumps(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.write("{}")
            return
        out.write("{")
        for k, (key, val) in enumerate(obj.items()):
            out.write((sep if k else "") + pad + json.dumps(str(key)) + ": ")
            _write(val, out, indent, level + 1)
        out.write(end + "}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        items = list(obj)
        if not items:
            out.write("[]")
            return
        # short numeric rows stay on one line
        flat = all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in items)
        inner_pad, inner_end = ("", "") if flat else (pad, end)
        out.write("[")
        for k, val in enumerate(items):
            out.write((", " if flat and k else sep if k else "") + inner_pad)
            _write(val, out, indent, level + 1)
        out.write(inner_end + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent=2):
    out = io.StringIO()
    _write(obj, out, indent, 0)
    out.write("\n")
    return out.getvalue()


def scan_csv(res, rads, values):
    lines = ["re,rad,mu"]
    for i, re in enumerate(res):
        for j, rad in enumerate(rads):
            lines.append(f"{fmt_float(re)},{fmt_float(rad)},{fmt_float(values[i, j])}")
    return "\n".join(lines) + "\n"


def _quat_list(entries, where):
    arr = np.asarray(entries, dtype=float)
    if arr.shape[-1:] != (4,):
        raise DimensionError(f"{where}: quaternion literals must have 4 components")
    return arr


def matrix_from_json(data):
    """Parse ``{"n": n, "entries": [[q, ...], ...]}`` into an (n, n, 4) array."""
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    if not isinstance(data, dict) or "entries" not in data or "n" not in data:
        raise DimensionError("matrix JSON needs 'n' and 'entries'")
    n = data["n"]
    try:
        arr = _quat_list(data["entries"], "matrix")
    except (TypeError, ValueError):
        raise DimensionError("matrix entries must be an n x n grid of [q0, q1, q2, q3]") from None
    if not isinstance(n, int) or arr.shape != (n, n, 4):
        raise DimensionError(f"matrix entries have shape {arr.shape[:-1]}, expected ({n}, {n})")
    return arr


def matrix_to_json(a):
    a = np.asarray(a, dtype=float)
    return {"n": int(a.shape[0]), "entries": [[list(map(float, q)) for q in row] for row in a]}


def vector_from_json(data):
    if isinstance(data, (str, bytes)):
        data = json.loads(data)
    if not isinstance(data, dict) or "entries" not in data or "n" not in data:
        raise DimensionError("vector JSON needs 'n' and 'entries'")
    try:
        arr = _quat_list(data["entries"], "vector")
    except (TypeError, ValueError):
        raise DimensionError("vector entries must be a list of [q0, q1, q2, q3]") from None
    if arr.shape != (data["n"], 4):
        raise DimensionError(f"vector has {arr.shape[0]} entries, expected {data['n']}")
    return arr


def vector_to_json(v):
    v = np.asarray(v, dtype=float)
    return {"n": int(v.shape[0]), "entries": [list(map(float, q)) for q in v]}
