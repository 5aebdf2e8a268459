# pcenters/utils/jsonx.py
"""Relaxed JSON for experiment configs.

Config files may carry ``//``, ``/* */`` and line-start ``#`` comments and
trailing commas before ``}`` or ``]``. Cone heights may be written as
``Infinity`` (accepted by :mod:`json`) or as the string ``"inf"``.
"""

import json
import math
from pathlib import Path
from typing import Any, Dict

import numpy as np


def strip_comments_and_trailing_commas(text: str) -> str:
    """Turn commented JSON into strict JSON; string contents are untouched."""
    out: list[str] = []
    i, n = 0, len(text)
    quote = ""
    while i < n:
        ch = text[i]
        nxt = text[i + 1] if i + 1 < n else ""
        if quote:
            out.append(ch)
            if ch == "\\" and nxt:
                out.append(nxt)
                i += 2
                continue
            if ch == quote:
                quote = ""
            i += 1
            continue
        if ch in ('"', "'"):
            quote = ch
            out.append(ch)
        elif ch == "/" and nxt == "/":
            while i < n and text[i] != "\n":
                i += 1
            continue
        elif ch == "/" and nxt == "*":
            end = text.find("*/", i + 2)
            i = n if end < 0 else end + 2
            continue
        elif ch == "#" and _at_line_start(out):
            while i < n and text[i] != "\n":
                i += 1
            continue
        elif ch == ",":
            k = i + 1
            while k < n and text[k] in " \t\r\n":
                k += 1
            if k < n and text[k] in "}]":
                i += 1
                continue
            out.append(ch)
        else:
            out.append(ch)
        i += 1
    return "".join(out)


def _at_line_start(out: list[str]) -> bool:
    j = len(out) - 1
    while j >= 0 and out[j] in (" ", "\t"):
        j -= 1
    return j < 0 or out[j] == "\n"


def loads(text: str) -> Dict[str, Any]:
    data = json.loads(strip_comments_and_trailing_commas(text))
    if not isinstance(data, dict):
        raise ValueError("config document must be a JSON object")
    return data


def load_file(path: str | Path) -> Dict[str, Any]:
    return loads(Path(path).read_text(encoding="utf-8"))


def as_float(value: Any) -> float:
    """Float conversion that understands ``"inf"``/``"infinity"``."""
    if isinstance(value, str) and value.strip().lower() in ("inf", "+inf", "infinity"):
        return math.inf
    return float(value)


def dumps(data: Any) -> str:
    """Stable JSON for output artifacts; infinities are written as ``"inf"``."""
    return json.dumps(_finite(data), indent=2, sort_keys=True) + "\n"


def _finite(obj: Any) -> Any:
    if isinstance(obj, float) and math.isinf(obj):
        return "inf" if obj > 0 else "-inf"
    if isinstance(obj, float) and math.isnan(obj):
        return "nan"
    if isinstance(obj, dict):
        return {str(k): _finite(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _finite(obj.tolist())
    if isinstance(obj, np.generic):
        return _finite(obj.item())
    return obj
