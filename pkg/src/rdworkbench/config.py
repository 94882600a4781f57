"""Resource caps. Ball enumerations refuse to grow past the element cap
so that desk-scale runs stay desk-scale; RD_WORKBENCH_CAP overrides."""

import os

DEFAULT_ELEMENT_CAP = 10_000_000


def element_cap() -> int:
    raw = os.environ.get("RD_WORKBENCH_CAP")
    if raw is None:
        return DEFAULT_ELEMENT_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"RD_WORKBENCH_CAP must be an integer, got {raw!r}") from exc
    if cap <= 0:
        raise ValueError(f"RD_WORKBENCH_CAP must be positive, got {cap}")
    return cap
