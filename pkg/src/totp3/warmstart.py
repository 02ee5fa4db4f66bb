"""Second-order warm start: backward/forward interval propagation.

Computes a profile that satisfies the first- and second-order rows and
is near-time-optimal (greedy pointwise max), to seed the SLP nominal.
Jerk rows are ignored here on purpose.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .constraints import Limits, acceleration_rows, torque_rows
from .dynamics import PathDynamicsCoefficients
from .path_model import PathGrid, PathSamples
from .planner import SquaredSpeedProfile


class WarmStartError(ValueError):
    """Raised when the instance is infeasible under second-order rows."""

    def __init__(self, k: int, message: str):
        super().__init__(f"k={k}: {message}")
        self.k = k


@dataclass(frozen=True)
class ReachableInterval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (0.0 <= self.lo <= self.hi):
            raise ValueError("need 0 <= lo <= hi")


def _pair_rows(rows, k):
    """(a0, a1, b) arrays of rows coupling x_k and x_{k+1}."""
    a0, a1, b = [], [], []
    for r in rows:
        if r.k == k and r.order == 2:
            a0.append(r.cols.get(k, 0.0))
            a1.append(r.cols.get(k + 1, 0.0))
            b.append(r.rhs)
    return np.array(a0), np.array(a1), np.array(b)


def step_interval(a0, a1, b, given: ReachableInterval, direction: str,
                  cap: float = np.inf) -> ReachableInterval:
    """Exact interval of the unknown variable under rows
    a0 x_k + a1 x_{k+1} <= b, the known side confined to `given`, the
    unknown capped by first-order rows and nonnegativity.

    direction "forward" solves for x_{k+1}, "backward" for x_k. When the
    known side is a single point the rows are one-variable half-lines and
    the intersection is computed exactly; otherwise the projection of the
    2-D feasible polygon is computed with two tiny LPs.
    """
    if given.lo == given.hi:
        known = given.lo
        a_unknown, a_known = (a1, a0) if direction == "forward" else (a0, a1)
        lo, hi = 0.0, cap
        for au, ak, bi in zip(a_unknown, a_known, b):
            rhs = bi - ak * known
            if au > 0:
                hi = min(hi, rhs / au)
            elif au < 0:
                lo = max(lo, rhs / au)
            elif rhs < -1e-12:
                raise WarmStartError(-1, "row unsatisfiable at fixed point")
        if lo > hi + 1e-12:
            raise WarmStartError(-1, "empty interval (second-order infeasible)")
        hi = max(hi, lo)
        return ReachableInterval(lo=lo, hi=hi)
    if direction == "forward":
        A = np.column_stack([a1, a0])  # unknown first
    elif direction == "backward":
        A = np.column_stack([a0, a1])
    else:
        raise ValueError(f"unknown direction {direction!r}")
    ub = cap if np.isfinite(cap) else None
    bounds = [(0.0, ub), (given.lo, given.hi)]
    out = []
    for sense in (1.0, -1.0):
        res = linprog([sense, 0.0], A_ub=A if A.size else None,
                      b_ub=b if A.size else None, bounds=bounds,
                      method="highs")
        if res.status != 0:
            raise WarmStartError(-1, "empty interval (second-order infeasible)")
        out.append(res.x[0])
    lo, hi = out
    return ReachableInterval(lo=max(lo, 0.0), hi=max(hi, lo, 0.0))


def velocity_caps(samples: PathSamples, limits: Limits) -> np.ndarray:
    """Per-point cap on x from the velocity rows; inf where q' = 0."""
    with np.errstate(divide="ignore"):
        caps = np.where(samples.dq_ds != 0.0,
                        (limits.qd_max / np.abs(samples.dq_ds)) ** 2,
                        np.inf)
    return caps.min(axis=1)


def warm_start(samples: PathSamples, coeffs: PathDynamicsCoefficients,
               grid: PathGrid, limits: Limits,
               x_start: float = 0.0, x_end: float = 0.0,
               x_floor: float = 1e-9) -> SquaredSpeedProfile:
    """Backward controllable pass then greedy forward max pass."""
    N = grid.N
    rows = acceleration_rows(samples, grid, limits)
    rows += torque_rows(samples, coeffs, grid, limits)
    caps = velocity_caps(samples, limits)

    # backward: controllable intervals ending at x_N
    ctrl = [None] * (N + 1)
    ctrl[N] = ReachableInterval(lo=x_end, hi=x_end)
    for k in range(N - 1, -1, -1):
        a0, a1, b = _pair_rows(rows, k)
        try:
            iv = step_interval(a0, a1, b, ctrl[k + 1], "backward", cap=caps[k])
        except WarmStartError as err:
            raise WarmStartError(k, "backward controllable set empty") from err
        ctrl[k] = iv
    if not (ctrl[0].lo - 1e-9 <= x_start <= ctrl[0].hi + 1e-9):
        raise WarmStartError(0, "start state not controllable to the goal")

    # forward: greedy pointwise max inside reachable ∩ controllable
    x = np.empty(N + 1)
    x[0] = x_start
    for k in range(N):
        a0, a1, b = _pair_rows(rows, k)
        here = ReachableInterval(lo=x[k], hi=x[k])
        try:
            reach = step_interval(a0, a1, b, here, "forward", cap=caps[k + 1])
        except WarmStartError as err:
            raise WarmStartError(k + 1, "forward reachable set empty") from err
        lo = max(reach.lo, ctrl[k + 1].lo)
        hi = min(reach.hi, ctrl[k + 1].hi)
        if lo > hi + 1e-9:
            raise WarmStartError(k + 1, "reachable and controllable sets disjoint")
        x[k + 1] = hi
    x[N] = x_end
    return SquaredSpeedProfile(x=x, x_start=x_start, x_end=x_end)


def fallback_nominal(samples: PathSamples, limits: Limits,
                     x_start: float = 0.0, x_end: float = 0.0,
                     x_floor: float = 1e-9) -> SquaredSpeedProfile:
    """Small constant positive profile under the velocity caps, for use
    when interval propagation fails only due to tight coupling."""
    caps = velocity_caps(samples, limits)
    level = min(x_floor * 1e6, 0.5 * float(np.min(caps[np.isfinite(caps)],
                                                  initial=1.0)))
    x = np.full(samples.n_points, max(level, x_floor))
    x[0], x[-1] = x_start, x_end
    return SquaredSpeedProfile(x=x, x_start=x_start, x_end=x_end)
