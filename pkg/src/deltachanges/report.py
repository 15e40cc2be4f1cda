"""Tabular reports and their csv / json / text renderings.

A :class:`Report` is a kind tag, ordered scalar fields and a table.  Dyadic
rationals always render as ``p/2^q``.  ``None`` renders as ``undefined``.

CSV carries only the table (header row first, columns in the order given by
the report).  The text format carries everything::

    report changes
    field width 3
    columns n count
    row 1 1

In text cells the empty string is written ``-``.
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass, field
from typing import Any

from .dyadic import Dyadic
from .errors import ParseError

__all__ = ["Report", "emit_report", "parse_report", "render_cell", "FORMATS"]

FORMATS = ("text", "csv", "json")
_DYADIC = re.compile(r"^\d+/2\^\d+$")


@dataclass(frozen=True)
class Report:
    kind: str
    columns: tuple[str, ...] = ()
    rows: tuple[tuple[Any, ...], ...] = ()
    fields: tuple[tuple[str, Any], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(self.columns))
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        fields = self.fields.items() if isinstance(self.fields, dict) else self.fields
        object.__setattr__(self, "fields", tuple((str(k), v) for k, v in fields))
        for r in self.rows:
            if len(r) != len(self.columns):
                raise ValueError(f"row {r!r} does not match columns {self.columns!r}")

    def field(self, name: str):
        for k, v in self.fields:
            if k == name:
                return v
        raise KeyError(name)


def render_cell(value) -> str:
    if value is None:
        return "undefined"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _text_cell(value) -> str:
    s = render_cell(value)
    return "-" if s == "" else s


def _json_value(value):
    if isinstance(value, Dyadic):
        return str(value)
    if isinstance(value, (tuple, list)):
        return [_json_value(v) for v in value]
    return value


def emit_report(report: Report, fmt: str = "text") -> bytes:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(report.columns)
        for r in report.rows:
            w.writerow([render_cell(v) for v in r])
        return buf.getvalue().encode()
    if fmt == "json":
        doc = {
            "report": report.kind,
            "fields": {k: _json_value(v) for k, v in report.fields},
            "columns": list(report.columns),
            "rows": [[_json_value(v) for v in r] for r in report.rows],
        }
        return (json.dumps(doc, indent=2) + "\n").encode()
    if fmt == "text":
        out = [f"report {report.kind}"]
        out += [f"field {k} {_text_cell(v)}" for k, v in report.fields]
        if report.columns:
            out.append("columns " + " ".join(report.columns))
            out += ["row " + " ".join(_text_cell(v) for v in r) for r in report.rows]
        return ("\n".join(out) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")


def _from_json(value):
    if isinstance(value, str) and _DYADIC.match(value):
        return Dyadic.parse(value)
    if isinstance(value, list):
        return tuple(_from_json(v) for v in value)
    return value


def _from_text(cell: str):
    if cell == "-":
        return ""
    if cell == "undefined":
        return None
    return cell


def parse_report(data: bytes | str, fmt: str = "text") -> Report:
    """Inverse of :func:`emit_report`.

    JSON restores typed values.  Text and CSV cells come back as strings
    (``undefined`` as ``None``), so re-emitting reproduces the same bytes.
    """
    text = data.decode() if isinstance(data, bytes) else data
    if fmt == "json":
        doc = json.loads(text)
        return Report(
            doc["report"],
            tuple(doc["columns"]),
            tuple(tuple(_from_json(v) for v in r) for r in doc["rows"]),
            tuple((k, _from_json(v)) for k, v in doc["fields"].items()),
        )
    if fmt == "csv":
        rows = list(csv.reader(io.StringIO(text)))
        if not rows:
            raise ParseError("empty csv report")
        body = tuple(tuple(None if c == "undefined" else c for c in r) for r in rows[1:])
        return Report("", tuple(rows[0]), body)
    if fmt == "text":
        lines = text.splitlines()
        if not lines or not lines[0].startswith("report "):
            raise ParseError("text report must start with 'report <kind>'")
        kind = lines[0].split(maxsplit=1)[1]
        fields, columns, rows = [], (), []
        for line in lines[1:]:
            tag, _, rest = line.partition(" ")
            if tag == "field":
                k, _, v = rest.partition(" ")
                fields.append((k, _from_text(v)))
            elif tag == "columns":
                columns = tuple(rest.split())
            elif tag == "row":
                rows.append(tuple(_from_text(c) for c in rest.split()))
            else:
                raise ParseError(f"unexpected line {line!r}")
        return Report(kind, columns, tuple(rows), tuple(fields))
    raise ValueError(f"unknown format {fmt!r}")
