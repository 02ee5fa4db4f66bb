"""Linear inequality row assembly over the squared-speed variables x_k.

All robot limits become rows a . x <= b in x = sdot^2:
  order 1: velocity caps, one variable per row
  order 2: acceleration and torque, two consecutive variables (forward
           difference form, k = 0..N-1)
  order 3: jerk, three consecutive variables, with the nonlinear
           denominator h_k replaced by its tangent-plane lower bound
           (h is convex, so the tightened rows imply the true bound).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dynamics import PathDynamicsCoefficients
from .path_model import PathGrid, PathSamples


class ConstraintError(ValueError):
    """Raised for inconsistent limit/assembly inputs."""


class InfeasibleConstraintError(ConstraintError):
    """A row is statically unsatisfiable (e.g. gravity torque beyond tau_max)."""

    def __init__(self, k: int, joint: int, message: str):
        super().__init__(f"k={k} joint={joint}: {message}")
        self.k = k
        self.joint = joint


@dataclass(frozen=True)
class Limits:
    """Joint-space limit vectors; tau_max only for dynamic models."""

    qd_max: np.ndarray
    qdd_max: np.ndarray
    jerk_max: np.ndarray
    tau_max: np.ndarray | None = None

    def __post_init__(self):
        for name in ("qd_max", "qdd_max", "jerk_max"):
            v = np.atleast_1d(np.asarray(getattr(self, name), dtype=float))
            object.__setattr__(self, name, v)
            if np.any(v <= 0):
                raise ConstraintError(f"{name} must be strictly positive")
        if self.tau_max is not None:
            v = np.atleast_1d(np.asarray(self.tau_max, dtype=float))
            object.__setattr__(self, "tau_max", v)
            if np.any(v <= 0):
                raise ConstraintError("tau_max must be strictly positive")

    @property
    def n_joints(self) -> int:
        return self.qd_max.size


@dataclass(frozen=True)
class Row:
    """One inequality sum_i cols[i] * x_i <= rhs over grid indices i."""

    order: int
    k: int
    joint: int
    sign: int
    cols: dict
    rhs: float


@dataclass(frozen=True)
class ConstraintBlocks:
    """All rows of one order, plus bookkeeping for diagnostics."""

    rows: tuple

    def by_order(self, order: int):
        return [r for r in self.rows if r.order == order]


@dataclass(frozen=True)
class JerkLinearization:
    """Affine lower bound of h_k at the nominal profile, per k."""

    h_bar: np.ndarray    # constant terms
    h0: np.ndarray       # slope wrt x_k
    h1: np.ndarray       # slope wrt x_{k+1}
    h2: np.ndarray       # slope wrt x_{k+2}


def velocity_rows(samples: PathSamples, limits: Limits) -> list[Row]:
    """(q'_k)^2 x_k <= qd_max^2, per joint, interior k only."""
    rows = []
    nu = limits.qd_max**2
    for k in range(1, samples.n_points - 1):
        omega = samples.dq_ds[k] ** 2
        for j in range(samples.n_joints):
            rows.append(Row(order=1, k=k, joint=j, sign=0,
                            cols={k: omega[j]}, rhs=nu[j]))
    return rows


def acceleration_rows(samples: PathSamples, grid: PathGrid,
                      limits: Limits) -> list[Row]:
    """|q''_k x_k + q'_k (x_{k+1}-x_k)/(2 dk)| <= qdd_max, k = 0..N-1."""
    rows = []
    deltas = grid.deltas
    for k in range(grid.N):
        a1 = samples.dq_ds[k] / (2.0 * deltas[k])
        a0 = samples.d2q_ds2[k] - a1
        for j in range(samples.n_joints):
            for sign in (1, -1):
                rows.append(Row(order=2, k=k, joint=j, sign=sign,
                                cols={k: sign * a0[j], k + 1: sign * a1[j]},
                                rhs=limits.qdd_max[j]))
    return rows


def torque_rows(samples: PathSamples, coeffs: PathDynamicsCoefficients,
                grid: PathGrid, limits: Limits) -> list[Row]:
    """|m_k/(2 dk) x_{k+1} + (c_k - m_k/(2 dk)) x_k + g_k| <= tau_max."""
    if coeffs.empty:
        return []
    if limits.tau_max is None:
        raise ConstraintError("tau_max required for a dynamic model")
    rows = []
    deltas = grid.deltas
    for k in range(grid.N):
        a1 = coeffs.m[k] / (2.0 * deltas[k])
        a0 = coeffs.c[k] - a1
        for j in range(samples.n_joints):
            for sign in (1, -1):
                rhs = limits.tau_max[j] - sign * coeffs.g[k][j]
                if a0[j] == 0.0 and a1[j] == 0.0 and rhs < 0.0:
                    raise InfeasibleConstraintError(
                        k, j, "static gravity torque exceeds tau_max")
                rows.append(Row(order=2, k=k, joint=j, sign=sign,
                                cols={k: sign * a0[j], k + 1: sign * a1[j]},
                                rhs=rhs))
    return rows


def jerk_numerator_coeffs(samples: PathSamples, grid: PathGrid):
    """Per-k (j0, j1, j2) n-vectors of the jerk numerator, k = 0..N-2."""
    deltas = grid.deltas
    K = grid.N - 1
    n = samples.n_joints
    j0 = np.empty((K, n))
    j1 = np.empty((K, n))
    j2 = np.empty((K, n))
    for k in range(K):
        r_k = samples.dq_ds[k] / (2.0 * deltas[k])
        r_k1 = samples.dq_ds[k + 1] / (2.0 * deltas[k + 1])
        j2[k] = r_k1
        j1[k] = samples.d2q_ds2[k + 1] - r_k1 - r_k
        j0[k] = -samples.d2q_ds2[k] + r_k
    return j0, j1, j2


def h_eval(x_window, deltas) -> float:
    """h_k = d_{k+1}/(sqrt(x_{k+2})+sqrt(x_{k+1})) + d_k/(sqrt(x_{k+1})+sqrt(x_k))."""
    x0, x1, x2 = (float(v) for v in x_window)
    d0, d1 = (float(v) for v in deltas)
    if min(x0, x1, x2) < 0:
        raise ConstraintError("x components must be nonnegative")
    den_a = np.sqrt(x2) + np.sqrt(x1)
    den_b = np.sqrt(x1) + np.sqrt(x0)
    if den_a == 0.0 or den_b == 0.0:
        raise ConstraintError("adjacent pair of x both zero")
    return d1 / den_a + d0 / den_b


def linearize_h(x_window_nominal, deltas):
    """Tangent plane of h at the nominal window: (h_bar, g0, g1, g2).

    h(x) >= h_bar + g0 x_k + g1 x_{k+1} + g2 x_{k+2} everywhere on the
    positive orthant, with equality at the nominal point.
    """
    x0, x1, x2 = (float(v) for v in x_window_nominal)
    d0, d1 = (float(v) for v in deltas)
    if min(x0, x1, x2) <= 0:
        raise ConstraintError("nominal window must be strictly positive")
    s0, s1, s2 = np.sqrt(x0), np.sqrt(x1), np.sqrt(x2)
    g0 = -d0 / (2.0 * s0 * (s0 + s1) ** 2)
    g2 = -d1 / (2.0 * s2 * (s1 + s2) ** 2)
    g1 = (-d0 / (2.0 * s1 * (s0 + s1) ** 2)
          - d1 / (2.0 * s1 * (s1 + s2) ** 2))
    h = d1 / (s1 + s2) + d0 / (s0 + s1)
    h_bar = h - g0 * x0 - g1 * x1 - g2 * x2
    return h_bar, g0, g1, g2


def jerk_linearization(grid: PathGrid, nominal_x, x_floor: float = 1e-9
                       ) -> JerkLinearization:
    """Linearize h_k at the (clamped) nominal profile for every k."""
    deltas = grid.deltas
    xbar = np.maximum(np.asarray(nominal_x, dtype=float), x_floor)
    K = grid.N - 1
    h_bar = np.empty(K)
    h0 = np.empty(K)
    h1 = np.empty(K)
    h2 = np.empty(K)
    for k in range(K):
        h_bar[k], h0[k], h1[k], h2[k] = linearize_h(
            xbar[k:k + 3], deltas[k:k + 2])
    return JerkLinearization(h_bar=h_bar, h0=h0, h1=h1, h2=h2)


def jerk_rows(samples: PathSamples, grid: PathGrid, limits: Limits,
              nominal_x, x_floor: float = 1e-9) -> list[Row]:
    """Conservative third-order rows: |j . x| <= jmax * (linearized h).

    Any x satisfying these rows satisfies the true nonlinear jerk bound,
    because the linearization under-estimates h everywhere.
    """
    j0, j1, j2 = jerk_numerator_coeffs(samples, grid)
    lin = jerk_linearization(grid, nominal_x, x_floor)
    rows = []
    for k in range(grid.N - 1):
        for j in range(samples.n_joints):
            jm = limits.jerk_max[j]
            for sign in (1, -1):
                cols = {
                    k: sign * j0[k, j] - jm * lin.h0[k],
                    k + 1: sign * j1[k, j] - jm * lin.h1[k],
                    k + 2: sign * j2[k, j] - jm * lin.h2[k],
                }
                rows.append(Row(order=3, k=k, joint=j, sign=sign,
                                cols=cols, rhs=jm * lin.h_bar[k]))
    return rows


def stack_blocks(rows, N: int, x_0: float, x_N: float):
    """Stack rows into dense (A, b) over the free variables x_1..x_{N-1}.

    The fixed boundary values x_0 and x_N are folded into b. Each row is
    scaled by its largest coefficient magnitude for conditioning. Returns
    (A, b, row_map) where row_map[i] is the source Row.
    """
    n_free = N - 1
    A = np.zeros((len(rows), n_free))
    b = np.empty(len(rows))
    row_map = []
    for i, row in enumerate(rows):
        rhs = row.rhs
        for idx, coef in row.cols.items():
            if idx == 0:
                rhs -= coef * x_0
            elif idx == N:
                rhs -= coef * x_N
            elif 1 <= idx <= N - 1:
                A[i, idx - 1] += coef
            else:
                raise ConstraintError(f"row references grid index {idx} > N")
        b[i] = rhs
        row_map.append(row)
    scale = np.max(np.abs(A), axis=1)
    scale[scale == 0.0] = 1.0
    A /= scale[:, None]
    b /= scale
    return A, b, row_map


def assemble_static_rows(samples: PathSamples, coeffs: PathDynamicsCoefficients,
                         grid: PathGrid, limits: Limits) -> list[Row]:
    """All first- and second-order rows (independent of the nominal profile)."""
    rows = velocity_rows(samples, limits)
    rows += acceleration_rows(samples, grid, limits)
    rows += torque_rows(samples, coeffs, grid, limits)
    return rows
