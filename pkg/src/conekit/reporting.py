"""Deterministic text emission for reports, records, and plot tables.

Floats are written with shortest-round-trip-safe precision (%.17g) in
machine records and fixture files, so re-parsing reproduces the value
exactly; human-readable reports use a compact format.  Nothing here
depends on wall-clock time or iteration order of unordered containers,
which is what makes repeated runs byte-identical.
"""

import numpy as np


def fmt(x, spec: str = ".17g") -> str:
    return format(float(x), spec)


def fmt_h(x) -> str:
    """Compact float for human-readable reports."""
    return format(float(x), ".6g")


def vec(v, spec: str = ".17g") -> str:
    return ",".join(fmt(c, spec) for c in np.asarray(v, dtype=float).reshape(-1))


def record_line(record: dict) -> str:
    """One key=value record per line; values canonicalized by type."""
    parts = []
    for key, val in record.items():
        if isinstance(val, bool):
            text = "true" if val else "false"
        elif isinstance(val, (int, np.integer)):
            text = str(int(val))
        elif isinstance(val, (float, np.floating)):
            text = fmt(val)
        elif isinstance(val, np.ndarray):
            text = vec(val)
        elif val is None:
            text = "none"
        else:
            text = str(val)
        parts.append(f"{key}={text}")
    return " ".join(parts)


def write_records(path, records) -> None:
    with open(path, "w") as fh:
        for rec in records:
            fh.write(record_line(rec) + "\n")


def write_lines(path, lines) -> None:
    with open(path, "w") as fh:
        for line in lines:
            fh.write(line + "\n")


def write_csv(path, rows, header: list[str] | None = None) -> None:
    """Plain comma-separated coordinate table (plot data)."""
    with open(path, "w") as fh:
        if header:
            fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(fmt(c) for c in np.asarray(row, dtype=float).reshape(-1))
                     + "\n")
