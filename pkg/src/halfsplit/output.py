"""One payload model, three renderings: text, json, csv."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any

SCHEMA_VERSION = 1
FORMATS = ("text", "json", "csv")


@dataclass
class OutputRecord:
    command: str
    parameters: dict[str, Any]
    result: dict[str, Any]
    rows: list[dict[str, Any]] = field(default_factory=list)
    text: list[str] = field(default_factory=list)

    def payload(self) -> dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "parameters": self.parameters,
            "result": self.result,
        }

    def to_json(self) -> str:
        return json.dumps(self.payload(), sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        columns: list[str] = []
        for row in self.rows:
            columns.extend(k for k in row if k not in columns)
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            writer.writerow({k: _cell(v) for k, v in row.items()})
        return buf.getvalue()

    def to_text(self) -> str:
        return "\n".join(self.text) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        if fmt == "text":
            return self.to_text()
        raise ValueError(f"unknown format {fmt!r}")


def _cell(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return " ".join(str(v) for v in value)
    if isinstance(value, bool):
        return "true" if value else "false"
    return value


def fmt_set(values) -> str:
    return "{" + ",".join(str(v) for v in sorted(values)) + "}"
