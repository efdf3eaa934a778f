"""Deterministic CSV/JSON emission shared by every table producer.

CSV floats use fixed 17-significant-digit scientific notation; JSON floats use
Python's shortest round-trip repr. Both decode to the same doubles.
"""

from __future__ import annotations

import json
import math
from typing import Iterable, Mapping, Sequence


def format_csv_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.16e}"
    return str(value)


def _plain(value):
    # numpy scalars and Energy subclasses become builtin types
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return int(value)
    if isinstance(value, float):
        return float(value)
    if hasattr(value, "item"):
        return value.item()
    return value


def csv_text(columns: Sequence[str], records: Iterable[Mapping]) -> str:
    lines = [",".join(columns)]
    for rec in records:
        lines.append(",".join(format_csv_value(_plain(rec[c])) for c in columns))
    return "\n".join(lines) + "\n"


def json_text(payload) -> str:
    def convert(obj):
        if isinstance(obj, Mapping):
            return {str(k): convert(v) for k, v in obj.items()}
        if isinstance(obj, (list, tuple)):
            return [convert(v) for v in obj]
        obj = _plain(obj)
        if isinstance(obj, float) and not math.isfinite(obj):
            # JSON has no infinities; keep the CSV spelling as a string
            return format_csv_value(obj)
        return obj

    return json.dumps(convert(payload), indent=None, separators=(",", ":"), allow_nan=False) + "\n"


def parse_csv_value(text: str):
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text
