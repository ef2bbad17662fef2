"""Bit-exact output formats: CSV writers, the JSON report schema, unit
parsing, and atomic file writes."""

from __future__ import annotations

import json
import os
import tempfile

import jsonschema

from .errors import InvalidArgument

CSV_FLOAT_FORMAT = "{:.9g}"

LENGTH_SUFFIXES = {
    "nm": 1e-9,
    "um": 1e-6,
    "mm": 1e-3,
    "cm": 1e-2,
    "m": 1.0,
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "slitbound report",
    "type": "object",
    "required": ["command", "parameters", "results"],
    "properties": {
        "command": {
            "type": "string",
            "enum": ["minstate", "lanczos", "lpbound", "reanalyze", "simulate", "estimate"],
        },
        "parameters": {"type": "object"},
        "results": {"type": "object"},
        "display": {
            "type": "object",
            "description": "3-decimal fields for direct table comparison",
        },
    },
    "additionalProperties": False,
}


def parse_length(text) -> float:
    """Parse a length with an optional SI suffix (nm, um, mm, cm, m) into
    meters; bare numbers are meters."""
    if isinstance(text, (int, float)):
        value = float(text)
    else:
        s = str(text).strip()
        factor = 1.0
        for suffix in sorted(LENGTH_SUFFIXES, key=len, reverse=True):
            if s.endswith(suffix):
                s = s[: -len(suffix)]
                factor = LENGTH_SUFFIXES[suffix]
                break
        try:
            value = float(s) * factor
        except ValueError as exc:
            raise InvalidArgument(f"cannot parse length {text!r}") from exc
    if not value > 0:
        raise InvalidArgument(f"length must be positive, got {text!r}")
    return value


def fmt(value) -> str:
    """Format one CSV cell: floats at 9 significant digits."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return CSV_FLOAT_FORMAT.format(value)
    return str(value)


def atomic_write_text(path: str, text: str) -> None:
    """Write via a temp file in the same directory plus rename."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(path: str, header: list[str], rows, comments: list[str] | None = None) -> None:
    lines = [f"# {c}" for c in (comments or [])]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    atomic_write_text(path, "\n".join(lines) + "\n")


def write_report(path: str, report: dict) -> None:
    jsonschema.validate(report, REPORT_SCHEMA)
    atomic_write_text(path, json.dumps(report, indent=2, sort_keys=True) + "\n")


def read_frame_csv(path: str):
    """Read a CCD frame CSV (`pixel,y_mm,intensity` plus a
    `# normalized=<bool>` comment).  Returns (y_meters, intensities,
    normalized)."""
    y = []
    intens = []
    normalized = False
    with open(path) as fh:
        header_seen = False
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("normalized="):
                    normalized = body.split("=", 1)[1].strip().lower() == "true"
                continue
            if not header_seen:
                if line != "pixel,y_mm,intensity":
                    raise InvalidArgument(
                        f"unexpected frame CSV header {line!r}; expected pixel,y_mm,intensity"
                    )
                header_seen = True
                continue
            parts = line.split(",")
            if len(parts) != 3:
                raise InvalidArgument(f"malformed frame CSV row {line!r}")
            y.append(float(parts[1]) * 1e-3)
            intens.append(float(parts[2]))
    if not header_seen or not y:
        raise InvalidArgument(f"frame CSV {path!r} contains no data")
    return y, intens, normalized
