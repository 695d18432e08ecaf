"""Tabular results: the engine's output format."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from .views import MemoryEstimate


@dataclass
class ResultTable:
    columns: list[str]
    rows: list[tuple]
    estimate: MemoryEstimate | None = field(default=None, compare=False)

    def __post_init__(self):
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValueError(
                    f"row arity {len(row)} != column count {len(self.columns)}"
                )

    def to_csv(self) -> str:
        """RFC 4180 rendering (CRLF line endings, minimal quoting)."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\r\n")
        writer.writerow(self.columns)
        writer.writerows(self.rows)
        return buffer.getvalue()

    def to_dict(self) -> dict:
        return {"columns": list(self.columns), "rows": [list(r) for r in self.rows]}
