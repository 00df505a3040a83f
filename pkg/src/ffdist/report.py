"""Structured reports: a JSON-lines stream or a CSV table with the same fields.

Both formats have three sections.  The header and the timings footer carry
run metadata (creation time, per-check wall time); the data section in
between depends only on the run configuration.
"""
from __future__ import annotations

import csv
import datetime as _dt
import io
import json
import math
from dataclasses import dataclass, field, fields, is_dataclass

import numpy as np

SCHEMA_VERSION = 1
STATUSES = ("pass", "fail", "vacuous", "refused")


@dataclass
class Check:
    criterion: int
    check: str
    instance: str
    status: str
    values: dict
    elapsed: float = field(default=0.0, compare=False)
    timing: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")

    def data(self) -> dict:
        return {
            "section": "data",
            "criterion": self.criterion,
            "check": self.check,
            "instance": self.instance,
            "status": self.status,
            "values": plain(self.values),
        }


def status(ok: bool) -> str:
    return "pass" if ok else "fail"


def plain(obj):
    """Convert numpy scalars, tuples and dataclasses to JSON-ready values."""
    if is_dataclass(obj):
        return {f.name: plain(getattr(obj, f.name)) for f in fields(obj)
                if not isinstance(getattr(obj, f.name), np.ndarray)}
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [plain(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x) or math.isinf(x):
            return repr(x)
        return x
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def header(command: str, config: dict, backend: str) -> dict:
    return {
        "section": "header",
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "created": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        "backend": backend,
        "config": plain(config),
    }


def footer(checks) -> dict:
    return {
        "section": "timings",
        "total_seconds": sum(c.elapsed for c in checks),
        "checks": [
            {"index": i, "seconds": c.elapsed, **({"detail": plain(c.timing)} if c.timing else {})}
            for i, c in enumerate(checks)
        ],
    }


def render_json(checks, head: dict) -> str:
    lines = [_dumps(head)]
    lines += [_dumps(c.data()) for c in checks]
    lines.append(_dumps(footer(checks)))
    return "\n".join(lines) + "\n"


CSV_FIELDS = ("criterion", "check", "instance", "status", "values")


def render_csv(checks, head: dict) -> str:
    buf = io.StringIO()
    buf.write("# " + _dumps(head) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for c in checks:
        row = c.data()
        writer.writerow([row["criterion"], row["check"], row["instance"], row["status"], _dumps(row["values"])])
    buf.write("# " + _dumps(footer(checks)) + "\n")
    return buf.getvalue()


def render(checks, head: dict, fmt: str) -> str:
    if fmt == "json":
        return render_json(checks, head)
    if fmt == "csv":
        return render_csv(checks, head)
    raise ValueError(f"unknown format {fmt!r}")


def data_section(text: str) -> str:
    """The configuration-determined part of a rendered report."""
    keep = []
    for line in text.splitlines():
        if line.startswith("# "):
            continue
        if line.startswith("{"):
            if json.loads(line).get("section") != "data":
                continue
        keep.append(line)
    return "\n".join(keep)


def read_json(text: str) -> list:
    return [json.loads(line) for line in text.splitlines() if line.strip()]


LINE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "oneOf": [
        {
            "type": "object",
            "required": ["section", "schema_version", "command", "created", "backend", "config"],
            "properties": {
                "section": {"const": "header"},
                "schema_version": {"const": SCHEMA_VERSION},
                "command": {"type": "string"},
                "created": {"type": "string"},
                "backend": {"enum": ["compiled", "python"]},
                "config": {"type": "object"},
            },
            "additionalProperties": False,
        },
        {
            "type": "object",
            "required": ["section", "criterion", "check", "instance", "status", "values"],
            "properties": {
                "section": {"const": "data"},
                "criterion": {"type": "integer", "minimum": 0},
                "check": {"type": "string"},
                "instance": {"type": "string"},
                "status": {"enum": list(STATUSES)},
                "values": {"type": "object"},
            },
            "additionalProperties": False,
        },
        {
            "type": "object",
            "required": ["section", "total_seconds", "checks"],
            "properties": {
                "section": {"const": "timings"},
                "total_seconds": {"type": "number", "minimum": 0},
                "checks": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["index", "seconds"],
                        "properties": {
                            "index": {"type": "integer"},
                            "seconds": {"type": "number"},
                            "detail": {"type": "object"},
                        },
                    },
                },
            },
            "additionalProperties": False,
        },
    ],
}
