"""Reading and validating the schema=1 sweep CSVs produced by bellqfi.

This layer contains no physics: thresholds, depths and onset flags are
consumed exactly as the primary component reported them.
"""

from __future__ import annotations

SCHEMA_LINE = "# schema=1"

REQUIRED_COLUMNS = {
    "ising_depth": ("n", "u", "qfi_over_sn", "depth"),
    "twomode_depth": ("n", "u", "qfi_over_sn", "depth"),
    "derivative": ("n", "u", "dqfi_d_abs_u", "e_full", "bell_onset_flag"),
}

FIGURE_KINDS = tuple(REQUIRED_COLUMNS)

INT_COLUMNS = {"n", "depth", "bell_onset_flag"}


class SchemaError(ValueError):
    """CSV does not follow the expected schema; the message names the problem."""


def read_rows(path, kind: str) -> list[dict]:
    """Parse one CSV, returning typed row dicts ordered as in the file.

    Rows flagged with a non-empty `error` column are dropped (they carry no
    numeric payload).  Raises SchemaError on version or column mismatches and
    when no plottable rows remain.
    """
    if kind not in REQUIRED_COLUMNS:
        raise SchemaError(f"unknown figure kind {kind!r}")
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0].strip() != SCHEMA_LINE:
        raise SchemaError(f"{path}: first line must be '{SCHEMA_LINE}'")
    if len(lines) < 2:
        raise SchemaError(f"{path}: missing header line")
    header = lines[1].split(",")
    missing = [c for c in REQUIRED_COLUMNS[kind] if c not in header]
    if missing:
        raise SchemaError(f"{path}: missing columns {missing}; header has {header}")
    rows = []
    for lineno, line in enumerate(lines[2:], start=3):
        if not line:
            continue
        values = line.split(",")
        if len(values) != len(header):
            raise SchemaError(f"{path}:{lineno}: expected {len(header)} fields, "
                              f"got {len(values)}")
        record = dict(zip(header, values))
        if record.get("error"):
            continue
        parsed = {}
        for column in REQUIRED_COLUMNS[kind]:
            text = record[column]
            if text == "":
                parsed[column] = None
                continue
            try:
                parsed[column] = int(text) if column in INT_COLUMNS else float(text)
            except ValueError as exc:
                raise SchemaError(f"{path}:{lineno}: bad value {text!r} "
                                  f"in column {column!r}") from exc
        rows.append(parsed)
    if not rows:
        raise SchemaError(f"{path}: no plottable data rows")
    return rows


def read_many(paths, kind: str) -> list[dict]:
    rows: list[dict] = []
    for path in paths:
        rows.extend(read_rows(path, kind))
    return rows


def group_by_size(rows) -> dict[int, list[dict]]:
    """Split rows per system size, each group ordered by ascending u."""
    groups: dict[int, list[dict]] = {}
    for row in rows:
        groups.setdefault(row["n"], []).append(row)
    for size in groups:
        groups[size].sort(key=lambda r: r["u"])
    return groups
