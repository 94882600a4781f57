"""Ordinary least-squares fits on log-log points, shared by the degree
estimators and the CLI sidecars."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import UsageError


@dataclass
class LogLogFit:
    slope: float
    intercept: float
    r2: float
    window: tuple[int, int]
    n_points: int


def loglog_fit(rs: Sequence[int], ys: Sequence[float],
               window: tuple[int, int]) -> LogLogFit:
    """OLS of log(y) against log(1 + r) over window[0] <= r <= window[1]."""
    lo, hi = window
    pairs = [(r, y) for r, y in zip(rs, ys) if lo <= r <= hi]
    if len(pairs) < 3:
        raise UsageError(
            f"window {lo}:{hi} keeps {len(pairs)} points, need at least 3")
    bad = [(r, y) for r, y in pairs if y <= 0]
    if bad:
        raise UsageError(f"nonpositive values in fit window: {bad[:3]}")
    xs = np.log1p([float(r) for r, _ in pairs])
    ys_log = np.log([y for _, y in pairs])
    if np.ptp(xs) == 0:
        raise UsageError("degenerate fit window: no spread in radius")
    A = np.vstack([xs, np.ones_like(xs)]).T
    (slope, intercept), *_ = np.linalg.lstsq(A, ys_log, rcond=None)
    resid = ys_log - (slope * xs + intercept)
    ss_res = float(resid @ resid)
    centered = ys_log - ys_log.mean()
    ss_tot = float(centered @ centered)
    if ss_tot > 0:
        r2 = 1.0 - ss_res / ss_tot
    else:
        r2 = 1.0 if math.isclose(ss_res, 0.0, abs_tol=1e-15) else 0.0
    return LogLogFit(float(slope), float(intercept), r2, (lo, hi), len(pairs))


def fit_rms_residual(rs: Sequence[int], ys: Sequence[float],
                     window: tuple[int, int]) -> float:
    fit = loglog_fit(rs, ys, window)
    lo, hi = window
    pairs = [(r, y) for r, y in zip(rs, ys) if lo <= r <= hi]
    xs = np.log1p([float(r) for r, _ in pairs])
    ys_log = np.log([y for _, y in pairs])
    resid = ys_log - (fit.slope * xs + fit.intercept)
    return float(np.sqrt(np.mean(resid ** 2)))
