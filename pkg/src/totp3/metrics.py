"""Timestamped trajectory reconstruction and quality metrics.

Uses the same difference formulas as the constraint rows (single source
of truth), so a profile that passes verification also yields series
within limits here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .constraints import h_eval, jerk_numerator_coeffs
from .dynamics import DynamicsModel, PathDynamicsCoefficients
from .path_model import PathGrid, PathSamples
from .planner import SquaredSpeedProfile


@dataclass(frozen=True)
class TrajectoryResult:
    t: np.ndarray          # (N+1,)
    s: np.ndarray          # (N+1,)
    x: np.ndarray          # (N+1,)
    q: np.ndarray          # (N+1, n)
    qd: np.ndarray
    qdd: np.ndarray
    jerk: np.ndarray       # zero at the last two points (undefined there)
    tau: np.ndarray | None
    duration: float
    rms_torque: np.ndarray | None
    peak_power: np.ndarray | None


def timestamps(profile: SquaredSpeedProfile, grid: PathGrid) -> np.ndarray:
    """Cumulative times with dt_k = 2 d_k / (sqrt(x_k) + sqrt(x_{k+1}))."""
    sq = np.sqrt(profile.x)
    dens = sq[:-1] + sq[1:]
    if np.any(dens == 0.0):
        raise ValueError("adjacent zero pair in profile")
    dt = 2.0 * grid.deltas / dens
    return np.concatenate([[0.0], np.cumsum(dt)])


def kinematics_series(profile: SquaredSpeedProfile, samples: PathSamples,
                      grid: PathGrid):
    """qd, qdd, jerk series from the same formulas as the constraint rows.

    qdd uses the forward difference for k < N and the backward one at N;
    jerk is defined for k <= N-2 and zero-padded at the last two points.
    """
    x = profile.x
    d = grid.deltas
    N = grid.N
    qd = samples.dq_ds * np.sqrt(x)[:, None]

    sdd = np.empty(N + 1)
    sdd[:-1] = (x[1:] - x[:-1]) / (2.0 * d)
    sdd[N] = (x[N] - x[N - 1]) / (2.0 * d[N - 1])
    qdd = samples.d2q_ds2 * x[:, None] + samples.dq_ds * sdd[:, None]

    jerk = np.zeros_like(qd)
    j0, j1, j2 = jerk_numerator_coeffs(samples, grid)
    for k in range(N - 1):
        if np.all(x[k:k + 3] == 0.0):
            continue  # stationary window: numerator is zero too
        h = h_eval(x[k:k + 3], d[k:k + 2])
        jerk[k] = (j0[k] * x[k] + j1[k] * x[k + 1] + j2[k] * x[k + 2]) / h
    return qd, qdd, sdd, jerk


def torque_series(profile: SquaredSpeedProfile,
                  coeffs: PathDynamicsCoefficients, sdd) -> np.ndarray:
    return (coeffs.m * sdd[:, None] + coeffs.c * profile.x[:, None]
            + coeffs.g)


def build_trajectory(profile: SquaredSpeedProfile, samples: PathSamples,
                     coeffs: PathDynamicsCoefficients,
                     grid: PathGrid) -> TrajectoryResult:
    t = timestamps(profile, grid)
    qd, qdd, sdd, jerk = kinematics_series(profile, samples, grid)
    tau = None
    rms = None
    peak = None
    if not coeffs.empty:
        tau = torque_series(profile, coeffs, sdd)
        rms = np.sqrt(np.mean(tau**2, axis=0))
        peak = np.max(np.abs(tau * qd), axis=0)
    return TrajectoryResult(
        t=t, s=grid.s_values, x=profile.x, q=samples.q, qd=qd, qdd=qdd,
        jerk=jerk, tau=tau, duration=float(t[-1]), rms_torque=rms,
        peak_power=peak)


def compute_metrics(traj: TrajectoryResult) -> dict:
    """Metrics record: duration plus per-joint RMS torque and peak |tau*qd|."""
    per_joint = []
    n = traj.q.shape[1]
    for j in range(n):
        entry = {}
        if traj.tau is not None:
            entry["rms_torque"] = float(traj.rms_torque[j])
            entry["peak_power"] = float(traj.peak_power[j])
        per_joint.append(entry)
    return {"duration_s": traj.duration, "per_joint": per_joint}


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def trajectory_csv(traj: TrajectoryResult) -> str:
    """CSV with one row per grid point; torque columns only for dynamic models."""
    n = traj.q.shape[1]
    cols = ["k", "s", "t", "x"]
    for j in range(n):
        cols += [f"q{j}", f"qd{j}", f"qdd{j}", f"jerk{j}"]
        if traj.tau is not None:
            cols += [f"tau{j}"]
    lines = [",".join(cols)]
    for k in range(traj.t.size):
        vals = [str(k), _fmt(traj.s[k]), _fmt(traj.t[k]), _fmt(traj.x[k])]
        for j in range(n):
            vals += [_fmt(traj.q[k, j]), _fmt(traj.qd[k, j]),
                     _fmt(traj.qdd[k, j]), _fmt(traj.jerk[k, j])]
            if traj.tau is not None:
                vals += [_fmt(traj.tau[k, j])]
        lines.append(",".join(vals))
    return "\n".join(lines) + "\n"


def metrics_json(traj: TrajectoryResult, solver_summary: dict | None = None) -> str:
    record = compute_metrics(traj)
    if solver_summary is not None:
        record["solver"] = solver_summary
    return json.dumps(record, indent=2, sort_keys=True) + "\n"
