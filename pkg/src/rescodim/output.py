"""Rendering of row data as an aligned table, JSON lines, or CSV.

Rows are dicts sharing one column order.  Rationals become ``"p/q"``
strings in every format; nested lists are kept as JSON arrays in JSON
lines and written as compact JSON text in the other two formats, so all
three carry the same values.
"""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

FORMATS = ("table", "json-lines", "csv")


def plain(value: Any) -> Any:
    """JSON-ready copy of ``value`` with exact rationals as strings."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return value
    if isinstance(value, (list, tuple, frozenset, set)):
        items = sorted(value) if isinstance(value, (frozenset, set)) else value
        return [plain(v) for v in items]
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    return str(value)


def cell(value: Any) -> str:
    """Flat text form used by the table and CSV renderers."""
    v = plain(value)
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def render(rows: Sequence[Dict[str, Any]], fmt: str, columns: Optional[List[str]] = None,
           title: Optional[str] = None, footer: Optional[str] = None) -> str:
    """Render rows; ``title`` and ``footer`` appear only in the table format."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}")
    if columns is None:
        columns = list(rows[0]) if rows else []
    if fmt == "json-lines":
        return "".join(json.dumps({c: plain(r.get(c)) for c in columns}, ensure_ascii=False) + "\n"
                       for r in rows)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([cell(r.get(c)) for c in columns])
        return buf.getvalue()
    grid = [columns] + [[cell(r.get(c)) for c in columns] for r in rows]
    widths = [max(len(row[i]) for row in grid) for i in range(len(columns))]
    lines = []
    if title:
        lines.append(title)
    for k, row in enumerate(grid):
        lines.append("  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip())
        if k == 0:
            lines.append("  ".join("-" * w for w in widths))
    if footer:
        lines.append(footer)
    return "\n".join(lines) + "\n"
