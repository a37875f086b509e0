"""Deterministic text output: sorted JSON keys and 17-significant-digit floats."""

from __future__ import annotations

import json
import math
import re

__all__ = ["format_float", "dumps"]

_MARK = "\x00f:"
_MARKED = re.compile(r'"\\u0000f:([^"]*)"')


def format_float(x: float) -> str:
    """``%.17g`` with a trailing ``.0`` kept on integral values so they read back as floats."""
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    text = f"{x:.17g}"
    if not any(c in text for c in ".en"):
        text += ".0"
    return text


def _mark(obj):
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, float):
        return _MARK + format_float(obj)
    if isinstance(obj, dict):
        return {k: _mark(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_mark(v) for v in obj]
    return obj


def dumps(obj, indent: int | None = 2) -> str:
    text = json.dumps(_mark(obj), sort_keys=True, indent=indent)
    return _MARKED.sub(lambda mo: mo.group(1), text)
