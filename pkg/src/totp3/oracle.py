"""Brute-force dynamic-programming reference optimum on a discrete x lattice.

For small instances only. Feasibility of transitions is checked against
the true nonlinear jerk expression (numerator over h), never against any
linearization, so this is an independent check on the SLP result.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constraints import Limits, jerk_numerator_coeffs
from .dynamics import PathDynamicsCoefficients
from .path_model import PathGrid, PathSamples
from .planner import SquaredSpeedProfile
from .warmstart import velocity_caps

_BIG = 1e30


class OracleError(ValueError):
    """Raised for oversized or infeasible oracle instances."""


@dataclass(frozen=True)
class DpGrid:
    """Per-stage candidate x levels (sorted ascending)."""

    levels: tuple  # one ascending array per stage k = 0..N


def build_levels(samples: PathSamples, grid: PathGrid, limits: Limits,
                 L: int, x_start: float, x_end: float,
                 x_floor: float = 1e-9, extra_profile=None) -> DpGrid:
    """Geometric levels from x_floor up to the per-stage velocity cap.

    Boundary stages hold only the fixed boundary value. extra_profile,
    when given, seeds its per-stage values into the lattice so known-good
    profiles are representable exactly.
    """
    caps = velocity_caps(samples, limits)
    finite = caps[np.isfinite(caps)]
    default_cap = float(finite.max()) if finite.size else 1.0
    levels = []
    N = grid.N
    for k in range(N + 1):
        if k == 0:
            levels.append(np.array([x_start]))
            continue
        if k == N:
            levels.append(np.array([x_end]))
            continue
        cap = caps[k] if np.isfinite(caps[k]) else default_cap
        lv = np.geomspace(x_floor, cap, L)
        if extra_profile is not None:
            v = float(extra_profile[k])
            if x_floor <= v <= cap:
                lv = np.append(lv, v)
        levels.append(np.unique(lv))
    return DpGrid(levels=tuple(levels))


def _pair_feasible(samples, coeffs, grid, limits, k, xa, xb, tol=1e-9):
    """(len(xa), len(xb)) mask of second-order feasibility between
    x_k = xa and x_{k+1} = xb (forward difference form)."""
    d = grid.deltas[k]
    sdd = (xb[None, :] - xa[:, None]) / (2.0 * d)
    ok = np.ones(sdd.shape, dtype=bool)
    for j in range(samples.n_joints):
        qdd = samples.d2q_ds2[k, j] * xa[:, None] + samples.dq_ds[k, j] * sdd
        ok &= np.abs(qdd) <= limits.qdd_max[j] + tol
    if not coeffs.empty:
        for j in range(samples.n_joints):
            tau = (coeffs.m[k, j] * sdd + coeffs.c[k, j] * xa[:, None]
                   + coeffs.g[k, j])
            ok &= np.abs(tau) <= limits.tau_max[j] + tol
    return ok


def _segment_cost(grid, k, xa, xb):
    return grid.deltas[k] / (np.sqrt(xa)[:, None] + np.sqrt(xb)[None, :])


def dp_optimal_time(samples: PathSamples, coeffs: PathDynamicsCoefficients,
                    grid: PathGrid, limits: Limits, L: int = 200,
                    jerk: bool = True, x_start: float = 0.0,
                    x_end: float = 0.0, dp_grid: DpGrid | None = None,
                    extra_profile=None):
    """Exact optimum over the lattice. Returns (T_star, profile).

    Travel time convention matches the planner: T = 2 f(x).
    """
    N = grid.N
    if N > 20:
        raise OracleError("oracle limited to N <= 20")
    if L > 400:
        raise OracleError("oracle limited to L <= 400")
    if dp_grid is None:
        dp_grid = build_levels(samples, grid, limits, L, x_start, x_end,
                               extra_profile=extra_profile)
    lv = [np.asarray(a, dtype=float) for a in dp_grid.levels]

    feas = [_pair_feasible(samples, coeffs, grid, limits, k, lv[k], lv[k + 1])
            for k in range(N)]
    cost = [_segment_cost(grid, k, lv[k], lv[k + 1]) for k in range(N)]

    if not jerk:
        V = np.zeros(lv[0].size)
        parents = []
        for k in range(N):
            tot = V[:, None] + np.where(feas[k], cost[k], _BIG)
            parents.append(np.argmin(tot, axis=0))
            V = np.min(tot, axis=0)
        if V.min() >= _BIG:
            raise OracleError("no feasible lattice path (jerk off)")
        x = np.empty(N + 1)
        idx = int(np.argmin(V))
        x[N] = lv[N][idx]
        for k in range(N - 1, -1, -1):
            idx = int(parents[k][idx])
            x[k] = lv[k][idx]
        T = 2.0 * float(V.min())
        return T, SquaredSpeedProfile(x=x, x_start=x_start, x_end=x_end)

    j0c, j1c, j2c = jerk_numerator_coeffs(samples, grid)
    jmax = limits.jerk_max

    # pair-state DP: W[k][i, j] = best cost through segment k ending with
    # (x_k = lv[k][i], x_{k+1} = lv[k+1][j])
    W = np.where(feas[0], cost[0], _BIG)
    parents = []
    for k in range(N - 1):
        xa, xb, xc = lv[k], lv[k + 1], lv[k + 2]
        da, db = grid.deltas[k], grid.deltas[k + 1]
        v = da / (np.sqrt(xb)[None, :] + np.sqrt(xa)[:, None])  # (i, j)
        u = db / (np.sqrt(xc)[None, :] + np.sqrt(xb)[:, None])  # (j, m)
        W_next = np.full((xb.size, xc.size), _BIG)
        par = np.zeros((xb.size, xc.size), dtype=np.int32)
        for j in range(xb.size):
            col = W[:, j]
            if col.min() >= _BIG:
                continue
            h = v[:, j][:, None] + u[j][None, :]  # (i, m)
            ok = np.ones(h.shape, dtype=bool)
            for jt in range(samples.n_joints):
                num = (j0c[k, jt] * xa[:, None] + j1c[k, jt] * xb[j]
                       + j2c[k, jt] * xc[None, :])
                ok &= np.abs(num) <= jmax[jt] * h + 1e-12
            tot = np.where(ok, col[:, None], _BIG)
            par[j] = np.argmin(tot, axis=0)
            best = np.min(tot, axis=0)
            W_next[j] = np.where(feas[k + 1][j], best + cost[k + 1][j], _BIG)
        parents.append(par)
        W = W_next
    if W.min() >= _BIG:
        raise OracleError("no feasible lattice path (jerk on)")

    flat = int(np.argmin(W))
    j_idx, m_idx = np.unravel_index(flat, W.shape)
    T = 2.0 * float(W[j_idx, m_idx])
    x = np.empty(N + 1)
    x[N] = lv[N][m_idx]
    x[N - 1] = lv[N - 1][j_idx]
    for k in range(N - 2, -1, -1):
        i_idx = int(parents[k][j_idx, m_idx])
        x[k] = lv[k][i_idx]
        j_idx, m_idx = i_idx, j_idx
    return T, SquaredSpeedProfile(x=x, x_start=x_start, x_end=x_end)
