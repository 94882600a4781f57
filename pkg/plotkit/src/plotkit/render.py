"""Figure rendering for the three CSV kinds."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .fitting import loglog_slope  # noqa: E402


def _fit_line(ax, rs, slope, intercept, window, label):
    lo, hi = window
    xs = np.linspace(np.log1p(lo), np.log1p(hi), 50)
    ax.plot(np.expm1(xs) + 1, np.exp(intercept + slope * xs), "-",
            linewidth=1.2, label=label)


def render_growth(rows, out_path, window):
    rs = [int(row["radius"]) for row in rows]
    counts = [float(row["count"]) for row in rows]
    group = rows[0]["group"]
    slope, intercept = loglog_slope(rs, counts, window)
    fig, ax = plt.subplots(figsize=(6, 4.2))
    ax.loglog([r + 1 for r in rs], counts, "o", markersize=4,
              label=f"{group} ball sizes")
    _fit_line(ax, rs, slope, intercept, window,
              f"slope {slope:.3f} on [{window[0]},{window[1]}]")
    ax.set_xlabel("1 + r")
    ax.set_ylabel("gamma(r)")
    ax.set_title(f"growth of {group}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return {"kind": "growth", "group": group, "slope": slope,
            "window": list(window)}


def render_rd_ratio(rows, out_path, window):
    rs = [int(row["r"]) for row in rows]
    ratios = [float(row["op_lower"]) / float(row["l2"]) for row in rows]
    uppers = [float(row["op_upper"]) / float(row["l2"]) for row in rows]
    group, family = rows[0]["group"], rows[0]["family"]
    slope, intercept = loglog_slope(rs, ratios, window)
    fig, ax = plt.subplots(figsize=(6, 4.2))
    ax.loglog([r + 1 for r in rs], ratios, "o", markersize=4,
              label="op_lower / l2")
    ax.loglog([r + 1 for r in rs], uppers, "s", markersize=3, alpha=0.5,
              label="op_upper / l2")
    _fit_line(ax, rs, slope, intercept, window,
              f"slope {slope:.3f} (s_hat {2 * slope:.3f})")
    ax.set_xlabel("1 + r")
    ax.set_ylabel("operator norm / l2")
    ax.set_title(f"rapid-decay ratios: {group}, {family}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return {"kind": "rd-ratio", "group": group, "family": family,
            "slope": slope, "s_hat": 2 * slope, "window": list(window)}


def render_centroid(rows, out_path, window):
    rs = [int(row["r"]) for row in rows]
    fig, ax = plt.subplots(figsize=(6, 4.2))
    slopes = {}
    for key, marker in (("cond1_max", "o"), ("cond2_max", "s"),
                        ("cond3_max", "^")):
        ys = [float(row[key]) for row in rows]
        slope, intercept = loglog_slope(rs, ys, window)
        slopes[key] = slope
        ax.loglog([r + 1 for r in rs], ys, marker, markersize=4,
                  label=f"{key} (slope {slope:.3f})")
        _fit_line(ax, rs, slope, intercept, window, None)
    ax.set_xlabel("1 + r")
    ax.set_ylabel("condition maxima")
    ax.set_title("centroid condition maxima")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return {"kind": "centroid", "slopes": slopes,
            "degree_bound": sum(slopes.values()), "window": list(window)}


RENDERERS = {
    "growth": render_growth,
    "rd-ratio": render_rd_ratio,
    "centroid": render_centroid,
}
