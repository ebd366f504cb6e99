"""CSV tables with a JSON metadata sidecar."""
from __future__ import annotations

import csv
import json
import logging
import math
from pathlib import Path

from . import __version__
from .errors import GanQwrError

log = logging.getLogger(__name__)

SIG_DIGITS = 12


class OutputError(GanQwrError, OSError):
    pass


def format_value(v) -> str:
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, int):
        return str(v)
    if isinstance(v, str):
        return v
    v = float(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    # '#' keeps trailing zeros so every float carries SIG_DIGITS digits
    return f"{v:#.{SIG_DIGITS}g}"


def emit_csv(columns: list[str], rows: list, path, metadata: dict | None = None) -> str:
    """Write ``rows`` under a header of ``columns``; returns "ok" or "empty".

    The sidecar ``<path>.meta.json`` holds ``metadata`` plus the package
    version and the column list.
    """
    path = Path(path)
    for row in rows:
        if len(row) != len(columns):
            raise ValueError(f"row of length {len(row)} does not match {len(columns)} columns")
    status = "ok" if rows else "empty"
    if not rows:
        log.warning("table for %s is empty; writing header only", path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(columns)
            for row in rows:
                w.writerow([format_value(v) for v in row])
        meta = {"version": __version__, "columns": list(columns), "rows": len(rows), "status": status}
        meta.update(metadata or {})
        with open(str(path) + ".meta.json", "w", newline="\n") as fh:
            json.dump(meta, fh, indent=2, sort_keys=True, default=str)
            fh.write("\n")
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc.strerror}") from exc
    return status
