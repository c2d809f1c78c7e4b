"""JSON file formats and deterministic number formatting.

Channel file::

    {"matrix": [[0.9, 0.1], [0.1, 0.9]]}

Monoid file (``measures`` optional; weights follow the element order)::

    {"elements": ["e", "a"], "table": [[0, 1], [1, 1]],
     "measures": {"mu": {"weights": [0.5, 0.5]}}}
"""

import json
import math
from typing import Dict, Tuple

from .channel import Channel, make_channel
from .errors import InputError, StochannelError
from .monoid import FiniteMonoid, ProbMeasure, make_monoid, measure

SIG_DIGITS = 12


def fmt_float(x: float) -> str:
    """12 significant digits, trailing zeros trimmed, no negative zero."""
    x = float(x)
    if not math.isfinite(x):
        raise InputError(f"cannot emit non-finite number {x!r}")
    s = f"{x:.{SIG_DIGITS}g}"
    return "0" if s in ("0", "-0") else s


def dumps(obj, _level: int = 0) -> str:
    """JSON text with fixed float formatting; flat lists stay on one line."""
    pad, inner = "  " * _level, "  " * (_level + 1)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {dumps(v, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        items = [inner + dumps(v, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if hasattr(obj, "tolist"):
        return dumps(obj.tolist(), _level)
    raise InputError(f"cannot serialize {type(obj).__name__}")


def load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def _numeric_matrix(raw, what: str):
    if not isinstance(raw, list) or not raw or not all(isinstance(r, list) for r in raw):
        raise InputError(f"{what} must be a nonempty array of arrays")
    for r in raw:
        for v in r:
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise InputError(f"{what} has a non-numeric entry {v!r}")
    return raw


def channel_from_json(obj) -> Channel:
    if not isinstance(obj, dict) or "matrix" not in obj:
        raise InputError('channel file must be an object with a "matrix" field')
    return make_channel(_numeric_matrix(obj["matrix"], "matrix"))


def load_channel_file(path: str) -> Channel:
    try:
        return channel_from_json(load_json(path))
    except StochannelError as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"{path}: {exc}") from None


def channel_to_json(c: Channel) -> dict:
    return {"matrix": c.tolist()}


def monoid_from_json(obj) -> Tuple[FiniteMonoid, Dict[str, ProbMeasure]]:
    if not isinstance(obj, dict) or "elements" not in obj or "table" not in obj:
        raise InputError('monoid file needs "elements" and "table"')
    elements = obj["elements"]
    if not isinstance(elements, list) or not all(isinstance(x, str) for x in elements):
        raise InputError("elements must be an array of strings")
    table = obj["table"]
    if not isinstance(table, list) or not all(
            isinstance(r, list) and all(isinstance(v, int) and not isinstance(v, bool) for v in r)
            for r in table):
        raise InputError("table must be an array of arrays of integers")
    s = make_monoid(elements, table)
    measures = {}
    raw = obj.get("measures", {})
    if not isinstance(raw, dict):
        raise InputError("measures must be an object of named weight arrays")
    for name, entry in raw.items():
        w = entry.get("weights") if isinstance(entry, dict) else entry
        if not isinstance(w, list):
            raise InputError(f"measure {name!r} has no weights array")
        _numeric_matrix([w], f"measure {name!r}")
        measures[name] = measure(s, w)
    return s, measures


def load_monoid_file(path: str) -> Tuple[FiniteMonoid, Dict[str, ProbMeasure]]:
    try:
        return monoid_from_json(load_json(path))
    except StochannelError as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"{path}: {exc}") from None


def monoid_to_json(s: FiniteMonoid, measures: Dict[str, ProbMeasure] = None) -> dict:
    out = {"elements": [str(x) for x in s.elements], "table": s.table.tolist()}
    if measures:
        out["measures"] = {k: {"weights": mu.weights.tolist()} for k, mu in measures.items()}
    return out
