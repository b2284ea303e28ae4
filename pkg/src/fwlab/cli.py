"""Command-line front end: solver runs and experiments with file outputs.

Every invocation that writes a file also writes `<file>.manifest.json`
echoing the full configuration, so outputs are replayable bit for bit
(the manifest timestamp aside).  Exit codes: 0 success, 2 invalid
flags, 3 infeasible start, 4 numeric failure.
"""

from __future__ import annotations

import argparse
import datetime
import json
import sys

import numpy as np

from . import __version__
from .dynamics import constants_dict, fixed_point_y, slow_constants, slow_start, write_slow_curve_csv
from .errors import (
    BracketFailureError,
    DegenerateDirectionError,
    DomainError,
    FWLabError,
    InfeasibleStartError,
    NumericError,
    UnsupportedExponentError,
    UnsupportedObjectiveError,
    ZeroGradientError,
)
from .experiments import heatmap, random_feasible_points, rate_report, write_heatmap_csv
from .objectives import HEBPower, Quadratic
from .precision import Precision
from .solver import (
    RULE_EXACT,
    RULE_SHORT,
    ProblemSpec,
    SolverConfig,
    run,
    write_trajectory_csv,
)


def _scope_label(p) -> str:
    return "outside theorem scope (p < 3)" if p < 3 else "p >= 3"


def _write_manifest(out_path: str, command: str, config: dict) -> str:
    manifest = {
        "tool": "fwlab",
        "version": __version__,
        "command": command,
        "config": config,
        "outputs": [out_path],
        "created_utc": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
    path = f"{out_path}.manifest.json"
    with open(path, "w", newline="") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def _parse_x0(spec: str, p: float):
    """Parse slow:<u0> | point:<x1>,<x2> | random:<seed>.

    Returns (x0, u0_or_None, seed_or_None).
    """
    kind, _, rest = spec.partition(":")
    if kind == "slow" and rest:
        u0 = float(rest)
        return slow_start(u0, p), u0, None
    if kind == "point" and rest:
        parts = rest.split(",")
        if len(parts) != 2:
            raise ValueError(f"point takes exactly two coordinates, got {rest!r}")
        return (float(parts[0]), float(parts[1])), None, None
    if kind == "random" and rest:
        seed = int(rest)
        return random_feasible_points(p, 1, seed)[0], None, seed
    raise ValueError(f"cannot parse --x0 {spec!r}; use slow:<u0>, point:<x1>,<x2>, or random:<seed>")


def cmd_solve(args) -> int:
    if args.rule == RULE_SHORT and args.theta is not None:
        print("error: short step rule is not defined for the HEB power objective", file=sys.stderr)
        return 2
    precision = Precision.parse(args.precision)
    x0, u0, seed = _parse_x0(args.x0, args.p)
    obj = HEBPower(mu=args.mu, theta=args.theta) if args.theta is not None else Quadratic()
    problem = ProblemSpec(p=args.p, d=2)
    cfg = SolverConfig(rule=args.rule, max_iters=args.iters, gap_tol=args.tol,
                       record_every=args.record_every, precision=precision)
    records = run(problem, obj, x0, cfg)
    write_trajectory_csv(records, args.out, precision)
    _write_manifest(args.out, "solve", {
        "p": args.p,
        "theta": obj.theta,
        "mu": obj.mu,
        "u0": u0,
        "rule": args.rule,
        "T": args.iters,
        "tol": args.tol,
        "precision": precision.label(),
        "seed": seed,
        "x0": args.x0,
        "record_every": args.record_every,
        "scope": _scope_label(args.p),
    })
    return 0


def cmd_heatmap(args) -> int:
    cells = heatmap(args.p, args.grid, args.target, cap=args.cap, jobs=args.jobs)
    write_heatmap_csv(cells, args.out)
    _write_manifest(args.out, "heatmap", {
        "p": args.p,
        "grid": args.grid,
        "target": args.target,
        "cap": args.cap,
        "jobs": args.jobs,
        "interior_margin": 1e-9,
        "cap_sentinel": -1,
        "scope": _scope_label(args.p),
    })
    return 0


def cmd_fixedpoint(args) -> int:
    us = np.geomspace(args.u_min, args.u_max, args.points)
    points = [fixed_point_y(float(u), args.p, tol=args.tol, u_max=args.u_max) for u in us]
    write_slow_curve_csv(points, args.out)
    _write_manifest(args.out, "fixedpoint", {
        "p": args.p,
        "u_min": args.u_min,
        "u_max": args.u_max,
        "points": args.points,
        "tol": args.tol,
        "scope": _scope_label(args.p),
    })
    return 0


def cmd_rates(args) -> int:
    precision = Precision.parse(args.precision)
    heb = not (args.theta == 0.5 and args.mu == 1.0)
    obj = HEBPower(mu=args.mu, theta=args.theta) if heb else Quadratic()
    x0 = slow_start(args.u0, args.p, precision=precision)
    problem = ProblemSpec(p=args.p, d=2)
    cfg = SolverConfig(rule=RULE_EXACT, max_iters=args.iters, gap_tol=0.0,
                       record_every=args.record_every, precision=precision)
    records = run(problem, obj, x0, cfg)
    report = rate_report(args.p, args.theta, args.mu, args.u0, args.iters, records,
                         window_fraction=args.window)
    report["scope"] = _scope_label(args.p)
    with open(args.out, "w", newline="") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    _write_manifest(args.out, "rates", {
        "p": args.p,
        "theta": args.theta,
        "mu": args.mu,
        "u0": args.u0,
        "T": args.iters,
        "window": args.window,
        "precision": precision.label(),
        "record_every": args.record_every,
        "scope": _scope_label(args.p),
    })
    return 0


def cmd_constants(args) -> int:
    sc = slow_constants(args.p)
    payload = constants_dict(sc)
    payload["scope"] = _scope_label(args.p)
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
        _write_manifest(args.out, "constants", {"p": args.p})
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fwlab",
        description="Frank-Wolfe dynamics laboratory on lp balls",
    )
    parser.add_argument("--version", action="version", version=f"fwlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run the solver and export the trajectory CSV")
    solve.add_argument("--p", type=float, required=True, help="ball exponent")
    solve.add_argument("--rule", choices=[RULE_EXACT, RULE_SHORT], default=RULE_EXACT)
    solve.add_argument("--iters", type=int, default=1000, help="iteration budget")
    solve.add_argument("--tol", type=float, default=0.0, help="stop when the gap drops below this")
    solve.add_argument("--x0", required=True,
                       help="slow:<u0> | point:<x1>,<x2> | random:<seed>")
    solve.add_argument("--theta", type=float, default=None,
                       help="HEB exponent in (0, 1/2]; omit for the quadratic")
    solve.add_argument("--mu", type=float, default=1.0, help="HEB constant")
    solve.add_argument("--precision", default="double", help="double | extended[:<bits>]")
    solve.add_argument("--record-every", type=int, default=1, dest="record_every")
    solve.add_argument("--out", required=True, help="trajectory CSV path")
    solve.set_defaults(func=cmd_solve)

    heat = sub.add_parser("heatmap", help="iteration-count heatmap over the ball")
    heat.add_argument("--p", type=float, required=True)
    heat.add_argument("--grid", type=int, default=200, help="grid points per axis")
    heat.add_argument("--target", type=float, default=1e-4)
    heat.add_argument("--cap", type=int, default=10**6)
    heat.add_argument("--jobs", type=int, default=1, help="worker processes")
    heat.add_argument("--out", required=True, help="heatmap CSV path")
    heat.set_defaults(func=cmd_heatmap)

    fp = sub.add_parser("fixedpoint", help="solve the slow curve y*(u) on a geometric grid")
    fp.add_argument("--p", type=float, required=True)
    fp.add_argument("--u-min", type=float, default=1e-6, dest="u_min")
    fp.add_argument("--u-max", type=float, default=0.1, dest="u_max")
    fp.add_argument("--points", type=int, default=50)
    fp.add_argument("--tol", type=float, default=1e-12)
    fp.add_argument("--out", required=True, help="slow-curve CSV path")
    fp.set_defaults(func=cmd_fixedpoint)

    rates = sub.add_parser("rates", help="slow-start run with rate fit and constant tail")
    rates.add_argument("--p", type=float, required=True)
    rates.add_argument("--theta", type=float, default=0.5)
    rates.add_argument("--mu", type=float, default=1.0)
    rates.add_argument("--u0", type=float, default=0.5)
    rates.add_argument("--iters", type=int, default=100000)
    rates.add_argument("--window", type=float, default=0.1,
                       help="fit window starts at this fraction of T")
    rates.add_argument("--precision", default="double")
    rates.add_argument("--record-every", type=int, default=1, dest="record_every")
    rates.add_argument("--out", required=True, help="rate report JSON path")
    rates.set_defaults(func=cmd_rates)

    const = sub.add_parser("constants", help="closed-form slow-dynamics constants as JSON")
    const.add_argument("--p", type=float, required=True)
    const.add_argument("--out", default=None, help="optional JSON path")
    const.set_defaults(func=cmd_constants)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except InfeasibleStartError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (UnsupportedObjectiveError, UnsupportedExponentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (BracketFailureError, NumericError, DomainError,
            ZeroGradientError, DegenerateDirectionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except FWLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
