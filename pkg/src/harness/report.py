"""
Trial reports for external plotting.

Columns follow TrialRecord field order (REPORT_COLUMNS) and are part of the
file format documented in docs/file_formats.md.

    csv:    header row, one row per trial. Floats in repr form, NaN as `nan`,
            booleans as true/false, missing note as an empty cell.
    jsonl:  one JSON object per trial, NaN as null.
"""

import csv
import json
import math
from dataclasses import fields
from pathlib import Path

from utils.errors import ConfigError
from .types import TrialRecord

REPORT_COLUMNS = tuple(f.name for f in fields(TrialRecord))
REPORT_FORMATS = ("csv", "jsonl")


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "nan" if math.isnan(value) else repr(value)
    return str(value)


def _json_value(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def emit_report(records: list[TrialRecord], path: str | Path, fmt: str = "csv") -> Path:
    """
    Write records to `path`.

    Args:
        records: trial records, written in trial order
        path: output file; parent directories are created
        fmt: 'csv' or 'jsonl'

    Returns:
        The path written

    Raises:
        ConfigError: no records or unknown format
        OSError: the file cannot be written
    """
    if not records:
        raise ConfigError("no trial records to report")
    if fmt not in REPORT_FORMATS:
        raise ConfigError(f"report format must be one of {REPORT_FORMATS}, got {fmt!r}")

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    ordered = sorted(records, key=lambda r: r.trial)

    with open(path, "w", newline="", encoding="utf-8") as f:
        if fmt == "csv":
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(REPORT_COLUMNS)
            for record in ordered:
                data = record.to_dict()
                writer.writerow([_csv_cell(data[col]) for col in REPORT_COLUMNS])
        else:
            for record in ordered:
                data = record.to_dict()
                row = {col: _json_value(data[col]) for col in REPORT_COLUMNS}
                f.write(json.dumps(row, allow_nan=False) + "\n")
    return path
