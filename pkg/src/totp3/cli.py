"""Command-line front end: plan, compare, oracle.

Exit codes: 0 converged, 1 malformed input, 2 infeasible, 3 max-iters.
All numeric output is full-precision and deterministically formatted so
repeated runs are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

import numpy as np

from .constraints import InfeasibleConstraintError
from .dynamics import compute_dynamics_coeffs
from .io import InputError, load_path, load_robot
from .metrics import build_trajectory, metrics_json, trajectory_csv
from .oracle import OracleError, dp_optimal_time
from .planner import SlpConfig, slp_solve, travel_time, verify_profile
from .warmstart import WarmStartError, warm_start

log = logging.getLogger("totp3")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INFEASIBLE = 2
EXIT_MAX_ITERS = 3


def _setup_logging():
    level = os.environ.get("TOTP3_LOG", "error").upper()
    logging.basicConfig(level=getattr(logging, level, logging.ERROR),
                        format="%(levelname)s %(name)s: %(message)s")


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _load_instance(args):
    grid, samples = load_path(args.path_file, n_segments=args.n_segments)
    model, limits = load_robot(args.robot_file)
    coeffs = compute_dynamics_coeffs(model, samples)
    return grid, samples, model, limits, coeffs


def _solve(grid, samples, limits, coeffs, *, jerk_limited, epsilon,
           max_iters, trust_region):
    ws = warm_start(samples, coeffs, grid, limits)
    config = SlpConfig(epsilon=epsilon, max_iters=max_iters,
                       trust_region=trust_region, jerk_limited=jerk_limited)
    profile, report = slp_solve(samples, coeffs, grid, limits, ws, config)
    return ws, profile, report


def _iters_log(report) -> str:
    lines = []
    for rec in report.iter_records():
        lines.append(json.dumps({
            "iter": rec["iter"],
            "f": rec["f"] if np.isfinite(rec["f"]) else None,
            "T": rec["T"] if np.isfinite(rec["T"]) else None,
            "step_norm": None if np.isnan(rec["step_norm"]) else rec["step_norm"],
            "rho": rec["rho"],
            "lp_status": rec["lp_status"],
        }, sort_keys=True))
    return "\n".join(lines) + "\n"


def cmd_plan(args) -> int:
    try:
        grid, samples, model, limits, coeffs = _load_instance(args)
    except (InputError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    try:
        ws, profile, report = _solve(
            grid, samples, limits, coeffs,
            jerk_limited=args.jerk_limit == "on", epsilon=args.epsilon,
            max_iters=args.max_iters,
            trust_region=args.trust_region == "on")
    except (WarmStartError, InfeasibleConstraintError) as err:
        print(f"infeasible: {err}", file=sys.stderr)
        return EXIT_INFEASIBLE
    if profile is None:
        print(f"infeasible: {report.message}", file=sys.stderr)
        return EXIT_INFEASIBLE

    traj = build_trajectory(profile, samples, coeffs, grid)
    summary = {"status": report.status, "iterations": report.iterations,
               "final_cost": report.costs[-1] if report.costs else None}
    prefix = args.out_prefix
    with open(prefix + ".traj.csv", "w") as fh:
        fh.write(trajectory_csv(traj))
    with open(prefix + ".metrics.json", "w") as fh:
        fh.write(metrics_json(traj, summary))
    with open(prefix + ".iters.log", "w") as fh:
        fh.write(_iters_log(report))
    log.info("duration T=%s status=%s", _fmt(traj.duration), report.status)
    print(_fmt(traj.duration))
    if report.status == "max_iters":
        return EXIT_MAX_ITERS
    return EXIT_OK


def cmd_compare(args) -> int:
    try:
        grid, samples, model, limits, coeffs = _load_instance(args)
    except (InputError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    try:
        ws, base_profile, base_report = _solve(
            grid, samples, limits, coeffs, jerk_limited=False,
            epsilon=args.epsilon, max_iters=args.max_iters, trust_region=True)
    except (WarmStartError, InfeasibleConstraintError) as err:
        print(f"infeasible: {err}", file=sys.stderr)
        return EXIT_INFEASIBLE
    if base_profile is None:
        print(f"infeasible: {base_report.message}", file=sys.stderr)
        return EXIT_INFEASIBLE
    base_T = travel_time(base_profile, grid)
    from .constraints import Limits as _Limits
    from .metrics import build_trajectory as _bt, compute_metrics
    base_metrics = compute_metrics(_bt(base_profile, samples, coeffs, grid))

    rows = []
    for jmax in args.jerk_sweep:
        lim = _Limits(qd_max=limits.qd_max, qdd_max=limits.qdd_max,
                      jerk_max=np.full(limits.n_joints, jmax),
                      tau_max=limits.tau_max)
        try:
            _, profile, report = _solve(
                grid, samples, lim, coeffs, jerk_limited=True,
                epsilon=args.epsilon, max_iters=args.max_iters,
                trust_region=True)
        except (WarmStartError, InfeasibleConstraintError):
            rows.append({"jerk_limit": jmax, "status": "infeasible"})
            continue
        if profile is None:
            rows.append({"jerk_limit": jmax, "status": report.status})
            continue
        T = travel_time(profile, grid)
        metrics = compute_metrics(_bt(profile, samples, coeffs, grid))
        rows.append({"jerk_limit": jmax, "status": report.status,
                     "duration_s": T, "ratio": T / base_T,
                     "metrics": metrics})
    table = {"baseline": {"duration_s": base_T, "metrics": base_metrics,
                          "status": base_report.status},
             "sweep": rows}
    out = json.dumps(table, indent=2, sort_keys=True) + "\n"
    with open(args.out_prefix + ".compare.json", "w") as fh:
        fh.write(out)
    csv_lines = ["jerk_limit,status,duration_s,ratio"]
    for r in rows:
        csv_lines.append(",".join([
            _fmt(r["jerk_limit"]), r["status"],
            _fmt(r["duration_s"]) if "duration_s" in r else "",
            _fmt(r["ratio"]) if "ratio" in r else ""]))
    with open(args.out_prefix + ".compare.csv", "w") as fh:
        fh.write("\n".join(csv_lines) + "\n")
    print(_fmt(base_T))
    return EXIT_OK


def cmd_oracle(args) -> int:
    try:
        grid, samples, model, limits, coeffs = _load_instance(args)
    except (InputError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    if grid.N > 20:
        print("error: oracle requires N <= 20", file=sys.stderr)
        return EXIT_INPUT
    try:
        T, profile = dp_optimal_time(samples, coeffs, grid, limits,
                                     L=args.levels, jerk=args.jerk == "on")
    except OracleError as err:
        print(f"infeasible: {err}", file=sys.stderr)
        return EXIT_INFEASIBLE
    traj = build_trajectory(profile, samples, coeffs, grid)
    with open(args.out_prefix + ".oracle.csv", "w") as fh:
        fh.write(trajectory_csv(traj))
    print(_fmt(T))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="totp3",
        description="Jerk-constrained time-optimal path parameterization")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("path_file")
        p.add_argument("robot_file")
        p.add_argument("--n-segments", type=int, default=50)
        p.add_argument("--epsilon", type=float, default=1e-4)
        p.add_argument("--max-iters", type=int, default=100)
        p.add_argument("--out-prefix", default="totp3_out")

    p = sub.add_parser("plan", help="plan one trajectory")
    common(p)
    p.add_argument("--jerk-limit", choices=["on", "off"], default="on")
    p.add_argument("--trust-region", choices=["on", "off"], default="on")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("compare", help="sweep jerk limits against baseline")
    common(p)
    p.add_argument("--jerk-sweep", type=float, nargs="*", default=[])
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("oracle", help="brute-force DP reference optimum")
    common(p)
    p.add_argument("--levels", type=int, default=200)
    p.add_argument("--jerk", choices=["on", "off"], default="on")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
