"""CSV and run-manifest emission for sweep results.

CSV files are UTF-8 with a header row, '.' decimal separator, and floats
at 17 significant digits so reruns with the same seed are byte-identical.
"""

from __future__ import annotations

import csv
import json
import time
from datetime import datetime, timezone
from pathlib import Path

SCHEMA_VERSION = "1"


def format_value(value) -> str:
    """Deterministic cell formatting: full-precision floats, ints, strings."""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def write_records_csv(path, columns, rows) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(row.get(col, "")) for col in columns])


def write_manifest(path, command: str, seed, params: dict, started_at: float, duration_s: float) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    manifest = {
        "command": command,
        "seed": seed,
        "params": params,
        "started_at": datetime.fromtimestamp(started_at, tz=timezone.utc).isoformat(),
        "duration_s": duration_s,
        "schema_version": SCHEMA_VERSION,
    }
    with path.open("w", encoding="utf-8") as handle:
        json.dump(manifest, handle, indent=2, sort_keys=True)
        handle.write("\n")


class RunClock:
    """Minimal wall-clock context for manifests."""

    def __enter__(self):
        self.started_at = time.time()
        return self

    def __exit__(self, *exc):
        self.duration_s = time.time() - self.started_at
        return False
