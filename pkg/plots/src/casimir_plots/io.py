"""Readers for the CSV and JSON tables the fuzzy-casimir CLI writes.

Both formats reduce to the same shape: a list of row dicts with float
values, plus a meta dict (empty for CSV, which carries no metadata).  JSON
files must declare schema 1.
"""

import json

__all__ = ["Table", "load_table", "require_columns"]


class Table:
    def __init__(self, rows, meta):
        self.rows = rows
        self.meta = meta

    def column(self, name):
        return [row[name] for row in self.rows]


def _parse_json(text, path):
    data = json.loads(text)
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected a JSON object table")
    if data.get("schema") != 1:
        raise ValueError(f"{path}: unsupported schema {data.get('schema')!r}")
    rows = data.get("rows")
    if not isinstance(rows, list):
        raise ValueError(f"{path}: missing rows list")
    out = []
    for row in rows:
        if not isinstance(row, dict):
            raise ValueError(f"{path}: rows must be objects")
        out.append({k: v for k, v in row.items()})
    meta = data.get("meta", {})
    # fit payloads carry the fitted/theory blocks; keep them reachable
    for key in ("fit", "theory", "relative_errors", "delta_verdict"):
        if key in data:
            meta = {**meta, key: data[key]}
    return Table(out, meta if isinstance(meta, dict) else {})


def _parse_csv(text, path):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError(f"{path}: empty file")
    header = [h.strip() for h in lines[0].split(",")]
    rows = []
    for k, ln in enumerate(lines[1:], start=2):
        parts = ln.split(",")
        if len(parts) != len(header):
            raise ValueError(f"{path}:{k}: expected {len(header)} fields, got {len(parts)}")
        row = {}
        for name, part in zip(header, parts):
            try:
                row[name] = float(part)
            except ValueError:
                row[name] = part.strip()
        rows.append(row)
    return Table(rows, {})


def load_table(path):
    with open(path, "r") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return _parse_json(text, path)
    return _parse_csv(text, path)


def require_columns(table, names, path="input"):
    if not table.rows:
        raise ValueError(f"{path}: no data rows to plot")
    missing = [n for n in names if n not in table.rows[0]]
    if missing:
        raise ValueError(f"{path}: missing columns {', '.join(missing)}")
    for name in names:
        for row in table.rows:
            if not isinstance(row.get(name), (int, float)):
                raise ValueError(f"{path}: column {name} holds non-numeric data")
