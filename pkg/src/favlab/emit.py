"""Deterministic CSV/JSON emission with stable field order.

Floats are serialized with 17 significant digits so equal inputs produce
byte-identical files.
"""

from __future__ import annotations

import json
from typing import Mapping, Sequence


def fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def csv_rows(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _round_trip(obj):
    if isinstance(obj, float):
        return float(format(obj, ".17g"))
    if isinstance(obj, Mapping):
        return {k: _round_trip(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_trip(v) for v in obj]
    return obj


def json_report(obj: Mapping) -> str:
    return json.dumps(_round_trip(obj), sort_keys=True, separators=(",", ":")) + "\n"


def write_text(path: str | None, text: str, stdout) -> None:
    if path is None or path == "-":
        stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
