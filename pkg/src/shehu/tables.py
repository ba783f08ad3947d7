"""Result tables and their on-disk forms.

CSV carries the numeric grid only (header plus data rows, 17 significant
digits so every double round-trips); JSON additionally carries metadata.
Writes go through a temp file in the destination directory followed by an
atomic rename, so a crashed run never leaves a partial output behind.
Serialization is fully deterministic: identical tables produce identical
bytes.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass, field
from typing import Any

FORMATS = ("csv", "json")


@dataclass(frozen=True)
class ResultTable:
    columns: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        columns = tuple(str(c) for c in self.columns)
        if not columns:
            raise ValueError("a table needs at least one column")
        rows = tuple(tuple(float(v) for v in row) for row in self.rows)
        for row in rows:
            if len(row) != len(columns):
                raise ValueError(
                    f"row width {len(row)} does not match {len(columns)} columns"
                )
            for v in row:
                if not math.isfinite(v):
                    raise ValueError(f"table values must be finite, got {v}")
        object.__setattr__(self, "columns", columns)
        object.__setattr__(self, "rows", rows)


def _format_float(value: float) -> str:
    return format(value, ".17g")


def to_csv(table: ResultTable) -> str:
    lines = [",".join(table.columns)]
    for row in table.rows:
        lines.append(",".join(_format_float(v) for v in row))
    return "\n".join(lines) + "\n"


def from_csv(text: str) -> ResultTable:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("empty CSV input")
    columns = tuple(lines[0].split(","))
    rows = tuple(tuple(float(cell) for cell in line.split(",")) for line in lines[1:])
    return ResultTable(columns, rows)


def to_json(table: ResultTable) -> str:
    payload = {
        "columns": list(table.columns),
        "rows": [list(row) for row in table.rows],
        "metadata": table.metadata,
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def from_json(text: str) -> ResultTable:
    payload = json.loads(text)
    return ResultTable(
        tuple(payload["columns"]),
        tuple(tuple(row) for row in payload["rows"]),
        dict(payload.get("metadata", {})),
    )


def write_output(table: ResultTable, path: str, fmt: str) -> str:
    """Serialize and atomically replace ``path``; returns the path written."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown output format {fmt!r}; expected one of {FORMATS}")
    text = to_csv(table) if fmt == "csv" else to_json(table)
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        try:
            os.unlink(tmp_path)
        except FileNotFoundError:
            pass
        raise
    return path
