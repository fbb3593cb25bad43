"""Record serialization.  Floats are written with ``repr`` (shortest exact round trip)."""

from __future__ import annotations

import io
import json


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def record_to_csv(rec) -> str:
    buf = io.StringIO()
    buf.write(",".join(rec.columns) + "\n")
    for row in rec.rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


def record_to_json(rec) -> str:
    doc = {
        "scenario": rec.scenario,
        "status": rec.status,
        "error": rec.error,
        "meta": rec.meta,
        "summary": rec.summary,
        "columns": rec.columns,
        "rows": [list(r) for r in rec.rows],
    }
    return json.dumps(doc, allow_nan=True) + "\n"


def write_record(rec, path, fmt: str = "csv") -> None:
    text = record_to_csv(rec) if fmt == "csv" else record_to_json(rec)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def read_csv(path) -> tuple[list[str], list[tuple[float, ...]]]:
    with open(path, encoding="utf-8") as fh:
        columns = fh.readline().strip().split(",")
        rows = [tuple(float(v) for v in line.split(",")) for line in fh if line.strip()]
    return columns, rows
