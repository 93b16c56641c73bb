"""Tabular reports rendered as text, JSON or CSV.

Cells are stored already rendered as ``int``, ``bool`` or ``str``; exact
rationals appear as ``"p/q"`` strings, so every format carries identical
content and JSON round-trips exactly.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

Cell = int | bool | str


def cell(value: Any) -> Cell:
    if isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if value is None:
        return "none"
    if isinstance(value, (frozenset, set)):
        return " ".join(map(str, sorted(value)))
    if isinstance(value, (tuple, list)):
        return " ".join(map(str, value))
    raise TypeError(f"cannot render {type(value).__name__} in a report")


def _text(c: Cell) -> str:
    if isinstance(c, bool):
        return "true" if c else "false"
    return str(c)


@dataclass
class Report:
    command: str
    columns: list[str]
    rows: list[list[Cell]] = field(default_factory=list)
    verdict: str | None = None

    def add(self, *values: Any) -> None:
        if len(values) != len(self.columns):
            raise ValueError(f"row has {len(values)} cells, report has {len(self.columns)} columns")
        self.rows.append([cell(v) for v in values])

    def extend(self, rows: Iterable[Iterable[Any]]) -> None:
        for r in rows:
            self.add(*r)

    def to_json(self) -> str:
        return json.dumps({"command": self.command, "columns": self.columns,
                           "rows": self.rows, "verdict": self.verdict}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        obj = json.loads(text)
        return cls(obj["command"], obj["columns"], obj["rows"], obj["verdict"])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for r in self.rows:
            w.writerow([_text(c) for c in r])
        return buf.getvalue()

    def to_text(self) -> str:
        table = [self.columns] + [[_text(c) for c in r] for r in self.rows]
        widths = [max(len(r[i]) for r in table) for i in range(len(self.columns))]
        lines = [f"# {self.command}"]
        for r in table:
            lines.append("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip())
        if self.verdict is not None:
            lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json() + "\n"
        if fmt == "csv":
            return self.to_csv()
        return self.to_text()


def read_csv(text: str) -> tuple[list[str], list[list[str]]]:
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]
