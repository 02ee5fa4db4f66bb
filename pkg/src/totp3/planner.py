"""Sequential linear programming over the squared-speed profile.

Each iteration relinearizes the time cost and the jerk-row denominators
at the current nominal profile, solves the resulting LP over the free
variables x_1..x_{N-1}, and accepts the step only if the true
(nonlinear) cost decreased. Conservative jerk linearization makes every
LP-feasible iterate feasible for the true jerk bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .constraints import (Limits, assemble_static_rows, h_eval,
                          jerk_numerator_coeffs, jerk_rows, stack_blocks)
from .dynamics import PathDynamicsCoefficients
from .lp import LpProblem, solve_lp
from .path_model import PathGrid, PathSamples


class PlannerError(ValueError):
    """Raised for malformed planner inputs."""


@dataclass(frozen=True)
class SquaredSpeedProfile:
    """x_k = sdot_k^2 on the grid, with fixed boundary values."""

    x: np.ndarray
    x_start: float = 0.0
    x_end: float = 0.0

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        object.__setattr__(self, "x", x)
        if np.any(x < 0):
            raise PlannerError("x must be nonnegative")


@dataclass(frozen=True)
class SlpConfig:
    epsilon: float = 1e-4
    max_iters: int = 100
    x_floor: float = 1e-9
    trust_region: bool = True
    rho0: float = 1.0
    shrink: float = 0.5
    expand: float = 1.5
    min_radius: float = 1e-8
    jerk_limited: bool = True

    def __post_init__(self):
        if not (0 < self.shrink < 1 < self.expand):
            raise PlannerError("need shrink < 1 < expand")
        if min(self.epsilon, self.x_floor, self.rho0, self.min_radius) <= 0:
            raise PlannerError("config scalars must be positive")


@dataclass
class SlpReport:
    iterations: int = 0
    status: str = "converged"  # converged | max_iters | infeasible
    costs: list = field(default_factory=list)        # accepted true costs f
    step_norms: list = field(default_factory=list)   # per LP solve
    lp_statuses: list = field(default_factory=list)
    rhos: list = field(default_factory=list)
    accepted: list = field(default_factory=list)     # bool per LP solve
    iterates: list = field(default_factory=list)     # accepted x arrays
    message: str = ""

    def iter_records(self):
        """Line-delimited log records: iter, f, T, step_norm, rho, lp_status."""
        out = []
        f_so_far = np.inf
        ci = 0
        for i in range(self.iterations):
            if i < len(self.accepted) and self.accepted[i]:
                f_so_far = self.costs[ci]
                ci += 1
            out.append({
                "iter": i,
                "f": f_so_far,
                "T": 2.0 * f_so_far if np.isfinite(f_so_far) else f_so_far,
                "step_norm": self.step_norms[i],
                "rho": self.rhos[i],
                "lp_status": self.lp_statuses[i],
            })
        return out


def true_cost(profile: SquaredSpeedProfile, grid: PathGrid) -> float:
    """f(x) = sum_i delta_i / (sqrt(x_i) + sqrt(x_{i+1})); travel time is 2 f."""
    x = profile.x
    s = np.sqrt(x)
    dens = s[:-1] + s[1:]
    if np.any(dens == 0.0):
        raise PlannerError("adjacent zero pair in profile")
    return float(np.sum(grid.deltas / dens))


def travel_time(profile: SquaredSpeedProfile, grid: PathGrid) -> float:
    return 2.0 * true_cost(profile, grid)


def linearize_cost(nominal_x, grid: PathGrid, x_floor: float = 1e-9) -> np.ndarray:
    """Analytic gradient of f over the free variables x_1..x_{N-1}."""
    x = np.maximum(np.asarray(nominal_x, dtype=float), 0.0)
    if np.any(x[1:-1] <= 0):
        raise PlannerError("interior nominal entries must be positive")
    s = np.sqrt(x)
    d = grid.deltas
    N = grid.N
    c = np.empty(N - 1)
    for k in range(1, N):
        c[k - 1] = (-d[k - 1] / (2.0 * s[k] * (s[k - 1] + s[k]) ** 2)
                    - d[k] / (2.0 * s[k] * (s[k] + s[k + 1]) ** 2))
    return c


@dataclass(frozen=True)
class Violation:
    order: int
    k: int
    joint: int
    magnitude: float


@dataclass(frozen=True)
class VerifyReport:
    violations: tuple
    max_by_order: dict

    @property
    def feasible(self) -> bool:
        return len(self.violations) == 0


def verify_profile(profile: SquaredSpeedProfile, samples: PathSamples,
                   coeffs: PathDynamicsCoefficients, grid: PathGrid,
                   limits: Limits, tol: float = 1e-8,
                   check_jerk: bool = True) -> VerifyReport:
    """Recompute velocity, acceleration, torque and true nonlinear jerk
    from the profile and flag any limit excess beyond tol."""
    x = profile.x
    d = grid.deltas
    N = grid.N
    n = samples.n_joints
    violations = []
    max_by_order = {1: 0.0, 2: 0.0, 3: 0.0}

    def record(order, k, j, excess):
        max_by_order[order] = max(max_by_order[order], excess)
        if excess > tol:
            violations.append(Violation(order, k, j, excess))

    qd = samples.dq_ds * np.sqrt(x)[:, None]
    for k in range(N + 1):
        for j in range(n):
            record(1, k, j, abs(qd[k, j]) - limits.qd_max[j])

    sdd = (x[1:] - x[:-1]) / (2.0 * d)  # forward form, k = 0..N-1
    for k in range(N):
        qdd_k = samples.d2q_ds2[k] * x[k] + samples.dq_ds[k] * sdd[k]
        for j in range(n):
            record(2, k, j, abs(qdd_k[j]) - limits.qdd_max[j])
        if not coeffs.empty:
            tau_k = coeffs.m[k] * sdd[k] + coeffs.c[k] * x[k] + coeffs.g[k]
            for j in range(n):
                record(2, k, j, abs(tau_k[j]) - limits.tau_max[j])

    if check_jerk:
        j0, j1, j2 = jerk_numerator_coeffs(samples, grid)
        for k in range(N - 1):
            h = h_eval(x[k:k + 3], d[k:k + 2])
            num = j0[k] * x[k] + j1[k] * x[k + 1] + j2[k] * x[k + 2]
            for j in range(n):
                record(3, k, j, abs(num[j]) - limits.jerk_max[j] * h)

    return VerifyReport(violations=tuple(violations), max_by_order=max_by_order)


def slp_solve(samples: PathSamples, coeffs: PathDynamicsCoefficients,
              grid: PathGrid, limits: Limits,
              warm_start_profile: SquaredSpeedProfile,
              config: SlpConfig = SlpConfig()):
    """Iterate linearize-and-solve to a jerk-feasible time-optimal profile."""
    N = grid.N
    x0 = warm_start_profile.x_start
    xN = warm_start_profile.x_end
    static_rows = assemble_static_rows(samples, coeffs, grid, limits)
    lb_static = np.full(N - 1, config.x_floor)
    ub_static = np.full(N - 1, np.inf)

    xbar = warm_start_profile.x.copy()
    xbar[0], xbar[-1] = x0, xN
    incumbent = None
    f_inc = np.inf
    rho = config.rho0 * max(1.0, float(np.max(xbar)))
    report = SlpReport()

    for it in range(config.max_iters):
        report.iterations = it + 1
        xb = np.maximum(xbar, config.x_floor)
        xb[0], xb[-1] = max(x0, config.x_floor), max(xN, config.x_floor)
        c = linearize_cost(np.maximum(xbar, config.x_floor), grid,
                           config.x_floor)
        rows = list(static_rows)
        if config.jerk_limited:
            rows += jerk_rows(samples, grid, limits, xbar, config.x_floor)
        A, b, _ = stack_blocks(rows, N, x0, xN)

        if config.trust_region and incumbent is not None:
            lb = np.maximum(lb_static, xbar[1:-1] - rho)
            ub = xbar[1:-1] + rho
        else:
            lb, ub = lb_static, ub_static

        sol = solve_lp(LpProblem(c=c, A=A, b=b, lb=lb, ub=ub))
        report.lp_statuses.append(sol.status)
        report.rhos.append(rho)

        if sol.status != "optimal":
            report.step_norms.append(np.nan)
            report.accepted.append(False)
            if incumbent is None:
                report.status = "infeasible"
                report.message = (f"LP status {sol.status} at first iteration; "
                                  "instance infeasible under assembled rows")
                return None, report
            rho *= config.shrink
            if rho < config.min_radius:
                report.status = "converged"
                break
            continue

        x_new = xbar.copy()
        x_new[1:-1] = np.maximum(sol.x, 0.0)
        step = float(np.max(np.abs(x_new[1:-1] - xbar[1:-1])))
        report.step_norms.append(step)
        profile_new = SquaredSpeedProfile(x=x_new, x_start=x0, x_end=xN)
        f_new = true_cost(profile_new, grid)

        if incumbent is None or f_new <= f_inc + 1e-12:
            report.accepted.append(True)
            incumbent = profile_new
            f_inc = min(f_inc, f_new)
            report.costs.append(f_inc)
            report.iterates.append(x_new.copy())
            xbar = x_new
            rho *= config.expand
            if step < config.epsilon:
                report.status = "converged"
                break
        else:
            report.accepted.append(False)
            rho *= config.shrink
            if rho < config.min_radius:
                report.status = "converged"
                break
    else:
        report.status = "max_iters"

    return incumbent, report
