"""Command-line front end.

Every subcommand is reproducible: identical invocations produce identical
output bytes, except for the timing line, which lives in its own header
block (a ``# timing:`` comment in CSV files, a ``"timing"`` object in
JSON).  Errors print one machine-parsable line on stderr and exit with
2 (usage), 3 (capacity) or 4 (failed check).
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
import time
from typing import Optional

from . import __version__
from .algebra import parse_function_spec
from .balls import enumerate_ball, growth_function
from .centroid import (
    ActionSpec,
    make_strategy,
    verify_centroid_conditions,
)
from .config import element_cap
from .errors import (
    CapacityError,
    CheckError,
    MedianViolationError,
    UsageError,
    WorkbenchError,
)
from .fits import loglog_fit
from .graphs import named_graph
from .groups import make_group
from .median import chain_cover, hyperplane_poset, hyperplanes, is_median, wall_distance_check
from .opnorm import DEFAULT_ITERS, DEFAULT_TOL, kesten_gap, truncated_opnorm
from .rdprofile import fit_rd_degree, rd_profile

GROWTH_COLUMNS = ["group", "radius", "count"]
RDPROFILE_COLUMNS = ["group", "family", "r", "l2", "op_lower", "op_upper"]
CENTROID_COLUMNS = ["r", "cond1_max", "cond2_max", "cond3_max"]


def _manifest(args, argv, group=None) -> dict:
    manifest = {
        "tool": "rdworkbench",
        "version": __version__,
        "command": shlex.join(["rdw"] + list(argv)),
        "cap": element_cap(),
    }
    for key in ("group", "graph", "seed", "fn", "xi", "eta"):
        value = getattr(args, key, None)
        if value is not None:
            manifest[key] = value
    if group is not None:
        manifest["generators"] = group.generator_labels
    return manifest


def _write_csv(path: Optional[str], manifest: dict, timing: dict,
               columns: list[str], rows: list[list]) -> None:
    lines = [
        "# rdworkbench-manifest: " + json.dumps(manifest, sort_keys=True),
        "# timing: " + json.dumps(timing, sort_keys=True),
        ",".join(columns),
    ]
    for row in rows:
        lines.append(",".join(str(v) for v in row))
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _write_sidecar(path: str, payload: dict) -> None:
    with open(path + ".json", "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _print_json(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _parse_window(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise UsageError(f"window must look like A:B, got {text!r}")
    try:
        return int(lo), int(hi)
    except ValueError:
        raise UsageError(f"window must be integer A:B, got {text!r}")


def _parse_pair(text: str) -> tuple[int, int]:
    u, sep, v = text.partition(",")
    if not sep:
        raise UsageError(f"pair must look like u,v, got {text!r}")
    try:
        return int(u), int(v)
    except ValueError:
        raise UsageError(f"pair must be integer u,v, got {text!r}")


# -- subcommands ------------------------------------------------------------

def _cmd_growth(args, argv) -> int:
    group = make_group(args.group)
    start = time.perf_counter()
    ball = enumerate_ball(group, args.radius)
    gamma = growth_function(ball)
    timing = {"duration_s": round(time.perf_counter() - start, 6)}
    manifest = _manifest(args, argv, group)
    rows = [[group.spec, r, gamma[r]] for r in range(args.radius + 1)]
    _write_csv(args.out, manifest, timing, GROWTH_COLUMNS, rows)
    if args.out:
        payload = {"manifest": manifest, "timing": timing, "schema": "growth",
                   "group": group.spec, "radius": args.radius, "gamma": gamma}
        if args.radius >= 3:
            fit = loglog_fit(list(range(args.radius + 1)), gamma,
                             (1, args.radius))
            payload["fit"] = {"window": list(fit.window), "slope": fit.slope,
                              "intercept": fit.intercept, "r2": fit.r2}
        _write_sidecar(args.out, payload)
    return 0


def _cmd_opnorm(args, argv) -> int:
    group = make_group(args.group)
    f = parse_function_spec(group, args.fn)
    start = time.perf_counter()
    est = truncated_opnorm(f, args.radius, iters=args.iters, tol=args.tol,
                           seed=args.seed)
    timing = {"duration_s": round(time.perf_counter() - start, 6)}
    payload = {
        "manifest": _manifest(args, argv, group),
        "timing": timing,
        "lower": est.lower,
        "upper": est.upper,
        "iterations": est.iterations,
        "truncation_radius": est.truncation_radius,
        "trace_last": est.iteration_trace[-10:],
    }
    if args.out:
        _write_csv(args.out, payload["manifest"], timing,
                   ["iteration", "lower"],
                   [[i + 1, v] for i, v in enumerate(est.iteration_trace)])
    _print_json(payload)
    return 0


def _cmd_rd_degree(args, argv) -> int:
    group = make_group(args.group)
    family = {"balls": "balls", "spheres": "spheres",
              "random": "random-signs"}.get(args.family)
    if family is None:
        raise UsageError(f"unknown family {args.family!r}")
    window = _parse_window(args.window)
    start = time.perf_counter()
    profile = rd_profile(group, family, args.rmax, seed=args.seed,
                         iters=args.iters)
    fit = fit_rd_degree(profile, window)
    timing = {"duration_s": round(time.perf_counter() - start, 6)}
    manifest = _manifest(args, argv, group)
    summary = {
        "manifest": manifest,
        "timing": timing,
        "schema": "rdprofile",
        "group": group.spec,
        "family": family,
        "seed": args.seed,
        "window": list(fit.window),
        "slope": fit.slope,
        "s_hat": fit.s_hat,
        "r2": fit.r2,
    }
    rows = [[group.spec, family, p.r, p.l2, p.op_lower, p.op_upper]
            for p in profile.points]
    if args.out:
        _write_csv(args.out, manifest, timing, RDPROFILE_COLUMNS, rows)
        _write_sidecar(args.out, summary)
    else:
        summary["points"] = [
            {"r": p.r, "l2": p.l2, "op_lower": p.op_lower,
             "op_upper": p.op_upper} for p in profile.points]
    _print_json(summary)
    return 0


def _cmd_kesten(args, argv) -> int:
    group = make_group(args.group)
    f = parse_function_spec(group, args.fn)
    start = time.perf_counter()
    report = kesten_gap(f, args.radius, iters=args.iters, tol=args.tol)
    timing = {"duration_s": round(time.perf_counter() - start, 6)}
    _print_json({
        "manifest": _manifest(args, argv, group),
        "timing": timing,
        "l1": report.l1,
        "op_lower": report.op_lower,
        "gap": report.gap,
    })
    return 0


def _cmd_median_check(args, argv) -> int:
    graph = named_graph(args.graph)
    start = time.perf_counter()
    ok, witness = is_median(graph, return_witness=True)
    timing = {"duration_s": round(time.perf_counter() - start, 6)}
    payload = {"manifest": _manifest(args, argv), "timing": timing,
               "median": ok}
    if not ok:
        payload["violating_triple"] = list(witness)
        _print_json(payload)
        return 4
    _print_json(payload)
    return 0


def _cmd_hyperplanes(args, argv) -> int:
    graph = named_graph(args.graph)
    u, v = _parse_pair(args.pair)
    if not (0 <= u < graph.n and 0 <= v < graph.n):
        raise UsageError(f"pair {u},{v} out of range for {graph.n} vertices")
    start = time.perf_counter()
    planes = hyperplanes(graph)
    check = wall_distance_check(graph, u, v, planes)
    poset = hyperplane_poset(graph, u, v, planes)
    cover = chain_cover(poset)
    timing = {"duration_s": round(time.perf_counter() - start, 6)}
    _print_json({
        "manifest": _manifest(args, argv),
        "timing": timing,
        "hyperplanes": len(planes),
        "pair": {"u": u, "v": v, "d": check.d, "separating": check.separating,
                 "equal": check.equal},
        "poset": {"ground": len(poset.ground), "width": cover.width,
                  "chains": cover.chains, "antichain": cover.antichain},
    })
    if not check.equal:
        raise CheckError(
            f"distance {check.d} differs from separating wall count "
            f"{check.separating} for pair ({u},{v})")
    return 0


def _cmd_centroid_verify(args, argv) -> int:
    group = make_group(args.group)
    strategy = make_strategy(args.strategy)
    start = time.perf_counter()
    report = verify_centroid_conditions(
        ActionSpec(group), strategy, r_max=args.rmax, h_radius=args.hradius,
        sample=args.sample, seed=args.seed)
    timing = {"duration_s": round(time.perf_counter() - start, 6)}
    manifest = _manifest(args, argv, group)
    summary = {
        "manifest": manifest,
        "timing": timing,
        "schema": "centroid",
        "group": group.spec,
        "strategy": report.strategy,
        "r_values": report.r_values,
        "cond1_max": report.cond1_max,
        "cond2_max": report.cond2_max,
        "cond3_max": report.cond3_max,
        "sampling": report.sampling,
        "fitted_degrees": list(report.fitted_degrees or ()) or None,
        "deg_rd_bound": report.deg_rd_bound,
    }
    if args.out:
        rows = [[r, c1, c2, c3] for r, c1, c2, c3 in zip(
            report.r_values, report.cond1_max, report.cond2_max,
            report.cond3_max)]
        _write_csv(args.out, manifest, timing, CENTROID_COLUMNS, rows)
        _write_sidecar(args.out, summary)
    _print_json(summary)
    return 0


def _cmd_coeff_decay(args, argv) -> int:
    from .rdprofile import coeff_decay_sum

    group = make_group(args.group)
    xi = parse_function_spec(group, args.xi)
    eta = parse_function_spec(group, args.eta)
    start = time.perf_counter()
    value = coeff_decay_sum(xi, eta, args.s, args.radius)
    timing = {"duration_s": round(time.perf_counter() - start, 6)}
    _print_json({
        "manifest": _manifest(args, argv, group),
        "timing": timing,
        "value": value,
        "s": args.s,
        "radius": args.radius,
    })
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rdw",
        description="rapid-decay workbench: growth, operator norms, median "
                    "geometry and centroid verification",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("growth", help="Cayley ball growth function as CSV")
    p.add_argument("--group", required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_growth)

    p = sub.add_parser("opnorm", help="certified operator-norm bounds")
    p.add_argument("--group", required=True)
    p.add_argument("--fn", required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--iters", type=int, default=DEFAULT_ITERS)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_opnorm)

    p = sub.add_parser("rd-degree", help="rapid-decay degree estimate")
    p.add_argument("--group", required=True)
    p.add_argument("--family", required=True,
                   choices=["balls", "spheres", "random"])
    p.add_argument("--rmax", type=int, required=True)
    p.add_argument("--window", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iters", type=int, default=400)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_rd_degree)

    p = sub.add_parser("kesten", help="l1 norm vs operator norm gap")
    p.add_argument("--group", required=True)
    p.add_argument("--fn", required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--iters", type=int, default=DEFAULT_ITERS)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=_cmd_kesten)

    p = sub.add_parser("median-check", help="exhaustive median recognition")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=_cmd_median_check)

    p = sub.add_parser("hyperplanes", help="hyperplane structure of a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--pair", required=True, help="u,v")
    p.set_defaults(func=_cmd_hyperplanes)

    p = sub.add_parser("centroid-verify", help="centroid condition maxima")
    p.add_argument("--group", required=True)
    p.add_argument("--strategy", required=True, choices=["median", "gromov"])
    p.add_argument("--rmax", type=int, required=True)
    p.add_argument("--hradius", type=int, required=True)
    p.add_argument("--sample", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_centroid_verify)

    p = sub.add_parser("coeff-decay", help="matrix-coefficient decay sum")
    p.add_argument("--group", required=True)
    p.add_argument("--xi", required=True)
    p.add_argument("--eta", required=True)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--radius", type=int, required=True)
    p.set_defaults(func=_cmd_coeff_decay)

    return parser


_ERROR_KINDS = [
    (MedianViolationError, "median-violation"),
    (CheckError, "check-error"),
    (CapacityError, "capacity-error"),
    (UsageError, "usage-error"),
    (WorkbenchError, "error"),
]


def main(argv: Optional[list[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, argv)
    except WorkbenchError as exc:
        kind = next(k for cls, k in _ERROR_KINDS if isinstance(exc, cls))
        print(f"rdw: {kind}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
