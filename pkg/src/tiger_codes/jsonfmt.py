"""JSON output with floats written to 17 significant digits."""

import json
import math

import numpy as np


def _float(x):
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        return json.dumps(str(x))
    s = format(x, ".17g")
    if "e" not in s and "." not in s and "inf" not in s:
        s += ".0"
    return s


def plain(obj):
    """Convert numpy scalars/arrays and complex numbers into JSON-ready values."""
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [plain(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    return obj


def dumps(obj, indent=None):
    obj = plain(obj)
    pad = "" if indent is None else "\n"

    def enc(v, depth):
        ind = "" if indent is None else " " * (indent * (depth + 1))
        end = "" if indent is None else " " * (indent * depth)
        sep = ", " if indent is None else ","
        if isinstance(v, dict):
            if not v:
                return "{}"
            items = [f"{pad}{ind}{json.dumps(k)}: {enc(x, depth + 1)}" for k, x in v.items()]
            return "{" + sep.join(items) + f"{pad}{end}}}"
        if isinstance(v, list):
            if not v:
                return "[]"
            if all(not isinstance(x, (dict, list)) for x in v):
                return "[" + ", ".join(enc(x, depth + 1) for x in v) + "]"
            items = [f"{pad}{ind}{enc(x, depth + 1)}" for x in v]
            return "[" + sep.join(items) + f"{pad}{end}]"
        if isinstance(v, bool) or v is None:
            return json.dumps(v)
        if isinstance(v, int):
            return str(v)
        if isinstance(v, float):
            return _float(v)
        return json.dumps(v)

    return enc(obj, 0)
