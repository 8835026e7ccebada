"""Scan-table serialization: deterministic CSV and JSON with provenance.

CSV layout: one ``# units:`` comment line, a header row, then data rows in
full round-trip precision scientific notation.  Identical tables always
produce byte-identical files.  JSON output embeds the provenance manifest
and validates against ``schemas/scan_table.schema.json``.  All writes are
atomic (temp file in the target directory, then rename).
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .scenarios import ScanTable

FORMATS = ("csv", "json")
SCHEMA_PATH = Path(__file__).parent / "schemas" / "scan_table.schema.json"


def _fmt(x: float) -> str:
    return f"{x:.17e}"


def render_csv(table: ScanTable) -> str:
    units_line = "# units: " + ", ".join(
        f"{c} [{u}]" for c, u in zip(table.columns, table.units))
    header = ",".join(table.columns)
    rows = [",".join(_fmt(x) for x in row) for row in table.data]
    return "\n".join([units_line, header, *rows]) + "\n"


def render_json(table: ScanTable) -> str:
    return json.dumps(table.to_json_dict(), indent=2, sort_keys=True) + "\n"


def _atomic_write(path: Path, content: str) -> None:
    path = Path(path)
    if path.parent and not path.parent.exists():
        raise ConfigError(f"output directory {path.parent} does not exist")
    fd, tmp = tempfile.mkstemp(dir=str(path.parent) or ".", prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(content)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_results(table: ScanTable, path: str | Path, fmt: str = "csv") -> Path:
    """Write a scan table; returns the path written."""
    if fmt not in FORMATS:
        raise ConfigError(f"unknown output format {fmt!r}; expected one of {FORMATS}")
    content = render_csv(table) if fmt == "csv" else render_json(table)
    path = Path(path)
    _atomic_write(path, content)
    return path


def read_table(path: str | Path) -> ScanTable:
    """Read a table back; CSV carries no provenance, JSON carries everything."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() == ".json" or text.lstrip().startswith("{"):
        doc = json.loads(text)
        return ScanTable(columns=tuple(doc["columns"]), units=tuple(doc["units"]),
                         data=np.asarray(doc["rows"], dtype=float),
                         provenance=doc.get("provenance", {}))
    lines = text.splitlines()
    if len(lines) < 2 or not lines[0].startswith("# units:"):
        raise ConfigError(f"{path}: not a scan-table CSV (missing '# units:' line)")
    units = tuple(part.rsplit("[", 1)[1].rstrip("]").strip()
                  for part in lines[0][len("# units:"):].split(","))
    columns = tuple(lines[1].split(","))
    data = np.array([[float(x) for x in line.split(",")]
                     for line in lines[2:] if line], dtype=float)
    if data.size == 0:
        data = data.reshape(0, len(columns))
    return ScanTable(columns=columns, units=units, data=data, provenance={})
