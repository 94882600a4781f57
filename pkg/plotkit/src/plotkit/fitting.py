"""Independent least-squares slope on log-log points (y against 1 + r)."""

from __future__ import annotations

import numpy as np


def loglog_slope(rs, ys, window):
    """(slope, intercept) of log(y) ~ log(1 + r) over window[0] <= r <=
    window[1]; mirrors the producing tool's fit but shares no code with
    it."""
    lo, hi = window
    rs = np.asarray(rs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    keep = (rs >= lo) & (rs <= hi)
    if keep.sum() < 3:
        raise ValueError(f"window {lo}:{hi} keeps {int(keep.sum())} points, "
                         "need at least 3")
    if np.any(ys[keep] <= 0):
        raise ValueError("nonpositive values inside the fit window")
    x = np.log1p(rs[keep])
    y = np.log(ys[keep])
    A = np.vstack([x, np.ones_like(x)]).T
    (slope, intercept), *_ = np.linalg.lstsq(A, y, rcond=None)
    return float(slope), float(intercept)
