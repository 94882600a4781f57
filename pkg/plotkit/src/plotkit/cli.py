"""plotkit command line: render a workbench CSV to an annotated PNG.

    plotkit <kind> <csv> -o <png> [--window A:B]

Kinds: growth, rd-ratio, centroid.  The slope drawn on the figure is
refitted from the CSV body; when a JSON sidecar produced alongside the
CSV is present and its fit window matches, the refit must agree with the
sidecar slope to 1e-6 and a disagreement is a failed check (exit 4).
Schema mismatches exit 2 and print the column diff.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .csvio import SCHEMAS, SchemaMismatch, read_table
from .render import RENDERERS

SLOPE_AGREEMENT = 1e-6


def _default_window(kind: str, rows) -> tuple[int, int]:
    key = "radius" if kind == "growth" else "r"
    rs = [int(row[key]) for row in rows]
    lo = 2 if kind == "centroid" else 1
    return (lo, max(rs))


def _parse_window(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise ValueError(f"window must look like A:B, got {text!r}")
    return int(lo), int(hi)


def _sidecar_fits(kind: str, csv_path: str):
    """(window, slope-or-slopes) recorded by the producing tool, if any."""
    path = csv_path + ".json"
    if not os.path.exists(path):
        return None
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    if kind == "growth":
        fit = payload.get("fit")
        if fit:
            return tuple(fit["window"]), {"slope": fit["slope"]}
    elif kind == "rd-ratio":
        if "slope" in payload and "window" in payload:
            return tuple(payload["window"]), {"slope": payload["slope"]}
    elif kind == "centroid":
        degrees = payload.get("fitted_degrees")
        r_values = payload.get("r_values")
        if degrees and r_values:
            window = (2, max(r_values))
            return window, {"slopes": dict(zip(
                ("cond1_max", "cond2_max", "cond3_max"), degrees))}
    return None


def _check_sidecar(kind: str, result: dict, sidecar) -> dict:
    comparison = {"sidecar": None}
    if sidecar is None:
        return comparison
    window, recorded = sidecar
    if tuple(result["window"]) != window:
        comparison["sidecar"] = {"window": list(window), "matched": False,
                                 "reason": "window differs"}
        return comparison
    if "slope" in recorded:
        diff = abs(result["slope"] - recorded["slope"])
        agrees = diff <= SLOPE_AGREEMENT
        comparison["sidecar"] = {"window": list(window), "matched": True,
                                 "slope": recorded["slope"],
                                 "difference": diff, "agrees": agrees}
    else:
        diffs = {k: abs(result["slopes"][k] - v)
                 for k, v in recorded["slopes"].items()}
        agrees = all(d <= SLOPE_AGREEMENT for d in diffs.values())
        comparison["sidecar"] = {"window": list(window), "matched": True,
                                 "slopes": recorded["slopes"],
                                 "difference": diffs, "agrees": agrees}
    return comparison


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plotkit",
        description="render workbench CSV output as an annotated log-log plot")
    parser.add_argument("kind", choices=sorted(SCHEMAS))
    parser.add_argument("csv")
    parser.add_argument("-o", "--out", required=True, help="PNG output path")
    parser.add_argument("--window", help="A:B radius window for the slope fit")
    args = parser.parse_args(argv)

    try:
        rows = read_table(args.csv, args.kind)
    except SchemaMismatch as exc:
        print(f"plotkit: schema mismatch: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"plotkit: {exc}", file=sys.stderr)
        return 2

    try:
        window = (_parse_window(args.window) if args.window
                  else _default_window(args.kind, rows))
        result = RENDERERS[args.kind](rows, args.out, window)
    except ValueError as exc:
        print(f"plotkit: {exc}", file=sys.stderr)
        return 2

    result.update(_check_sidecar(args.kind, result, _sidecar_fits(args.kind,
                                                                  args.csv)))
    result["png"] = args.out
    print(json.dumps(result, sort_keys=True))

    sidecar = result.get("sidecar")
    if sidecar and sidecar.get("matched") and not sidecar.get("agrees"):
        print("plotkit: refit disagrees with the sidecar fit beyond 1e-6",
              file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
