"""Tabular reports rendered as text, JSON, CSV or markdown."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

FORMATS = ("text", "json", "csv", "md")


def _cell(v: Any) -> Any:
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (tuple, list)):
        return [_cell(x) for x in v]
    if isinstance(v, dict):
        return {k: _cell(x) for k, x in v.items()}
    if hasattr(v, "value") and isinstance(getattr(v, "value"), str):
        return v.value
    return v


def _flat(v: Any) -> str:
    v = _cell(v)
    if v is None:
        return ""
    if isinstance(v, list):
        return ";".join(map(str, v))
    if isinstance(v, bool):
        return str(v).lower()
    return str(v)


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class Report:
    title: str
    rows: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def columns(self) -> list[str]:
        cols: list[str] = []
        for row in self.rows:
            cols += [k for k in row if k not in cols]
        return cols

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "rows": [_cell(r) for r in self.rows],
            "summary": _cell(self.summary),
            "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in self.checks],
            "notes": list(self.notes),
            "ok": self.ok,
        }

    def render(self, fmt: str = "text") -> str:
        if fmt == "json":
            return json.dumps(self.to_dict(), indent=1, ensure_ascii=False) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            cols = self.columns()
            w.writerow(cols)
            for r in self.rows:
                w.writerow([_flat(r.get(c)) for c in cols])
            return buf.getvalue()
        if fmt == "md":
            return self._markdown()
        if fmt == "text":
            return self._text()
        raise ValueError(f"unknown format {fmt!r}")

    def _markdown(self) -> str:
        out = [f"### {self.title}", ""]
        cols = self.columns()
        if cols:
            out.append("| " + " | ".join(cols) + " |")
            out.append("|" + "|".join("---" for _ in cols) + "|")
            for r in self.rows:
                out.append("| " + " | ".join(_flat(r.get(c)) for c in cols) + " |")
            out.append("")
        out += self._tail()
        return "\n".join(out) + "\n"

    def _text(self) -> str:
        out = [self.title]
        cols = self.columns()
        if cols:
            table = [cols] + [[_flat(r.get(c)) for c in cols] for r in self.rows]
            widths = [max(len(row[i]) for row in table) for i in range(len(cols))]
            for row in table:
                out.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
        out += self._tail()
        return "\n".join(out) + "\n"

    def _tail(self) -> list[str]:
        out = []
        for k, v in self.summary.items():
            out.append(f"{k}: {_flat(v)}")
        for c in self.checks:
            out.append(f"[{'PASS' if c.ok else 'FAIL'}] {c.name}" + (f": {c.detail}" if c.detail else ""))
        out += [f"note: {n}" for n in self.notes]
        return out
