"""CSV input with schema validation.

Workbench CSV files carry their manifest in leading ``#`` comment lines;
the body is one header row plus data rows.  Each plot kind expects an
exact column list and a mismatch reports the full column diff."""

from __future__ import annotations

import csv
import io

SCHEMAS = {
    "growth": ["group", "radius", "count"],
    "rd-ratio": ["group", "family", "r", "l2", "op_lower", "op_upper"],
    "centroid": ["r", "cond1_max", "cond2_max", "cond3_max"],
}


class SchemaMismatch(Exception):
    def __init__(self, kind, expected, found):
        self.kind = kind
        self.expected = expected
        self.found = found
        missing = [c for c in expected if c not in found]
        extra = [c for c in found if c not in expected]
        parts = [f"{kind} expects columns {expected}, found {found}"]
        if missing:
            parts.append(f"missing: {missing}")
        if extra:
            parts.append(f"unexpected: {extra}")
        super().__init__("; ".join(parts))


def read_table(path: str, kind: str) -> list[dict[str, str]]:
    expected = SCHEMAS.get(kind)
    if expected is None:
        raise ValueError(f"unknown plot kind {kind!r}; choose from "
                         f"{sorted(SCHEMAS)}")
    with open(path, "r", encoding="utf-8") as fh:
        body = "".join(line for line in fh if not line.startswith("#"))
    rows = list(csv.reader(io.StringIO(body)))
    if not rows:
        raise SchemaMismatch(kind, expected, [])
    header = rows[0]
    if header != expected:
        raise SchemaMismatch(kind, expected, header)
    out = []
    for raw in rows[1:]:
        if not raw:
            continue
        if len(raw) != len(expected):
            raise SchemaMismatch(kind, expected, raw)
        out.append(dict(zip(expected, raw)))
    if not out:
        raise SchemaMismatch(kind, expected, header)
    return out
