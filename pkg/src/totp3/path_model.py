"""Joint-space path ingestion and sampling on the path-coordinate grid.

A path is a map q(s) for s in [0, 1]. It can come from waypoints (fitted
with a natural cubic spline per joint) or from raw (q, q', q'') samples
supplied directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline


class PathError(ValueError):
    """Raised for malformed path inputs."""


@dataclass(frozen=True)
class JointPath:
    """Per-joint C2 cubic spline in the path coordinate s.

    knots map the first waypoint to s=0 and the last to s=1.
    """

    waypoints: np.ndarray          # (W, n)
    knots: np.ndarray              # (W,)
    splines: tuple = field(repr=False, default=())  # one CubicSpline per joint

    @property
    def n_joints(self) -> int:
        return self.waypoints.shape[1]

    def position(self, s):
        return np.stack([sp(s) for sp in self.splines], axis=-1)

    def derivative(self, s):
        return np.stack([sp(s, 1) for sp in self.splines], axis=-1)

    def second_derivative(self, s):
        return np.stack([sp(s, 2) for sp in self.splines], axis=-1)


@dataclass(frozen=True)
class PathGrid:
    """Strictly increasing grid on [0, 1] with N segments."""

    s_values: np.ndarray  # (N+1,)

    def __post_init__(self):
        s = np.asarray(self.s_values, dtype=float)
        object.__setattr__(self, "s_values", s)
        if s.ndim != 1 or s.size < 4:
            raise PathError("grid needs at least 4 points (N >= 3)")
        if abs(s[0]) > 0 or abs(s[-1] - 1.0) > 0:
            raise PathError("grid must start at 0 and end at 1")
        if np.any(np.diff(s) <= 0):
            raise PathError("grid values must be strictly increasing")

    @property
    def N(self) -> int:
        return self.s_values.size - 1

    @property
    def deltas(self) -> np.ndarray:
        return np.diff(self.s_values)


@dataclass(frozen=True)
class PathSamples:
    """q, q', q'' evaluated on a grid; the geometric input to planning."""

    q: np.ndarray        # (N+1, n)
    dq_ds: np.ndarray    # (N+1, n)
    d2q_ds2: np.ndarray  # (N+1, n)

    def __post_init__(self):
        for name in ("q", "dq_ds", "d2q_ds2"):
            arr = np.atleast_2d(np.asarray(getattr(self, name), dtype=float))
            object.__setattr__(self, name, arr)
        if not (self.q.shape == self.dq_ds.shape == self.d2q_ds2.shape):
            raise PathError("sample arrays must share one shape")
        if not (np.isfinite(self.q).all() and np.isfinite(self.dq_ds).all()
                and np.isfinite(self.d2q_ds2).all()):
            raise PathError("sample arrays must be finite")

    @property
    def n_joints(self) -> int:
        return self.q.shape[1]

    @property
    def n_points(self) -> int:
        return self.q.shape[0]


def fit_spline(waypoints, parameterization: str = "uniform") -> JointPath:
    """Fit a natural cubic spline per joint through the waypoints.

    parameterization: "uniform" spaces knots evenly; "chord_length" spaces
    them by euclidean distance between consecutive waypoints.
    """
    wp = np.atleast_2d(np.asarray(waypoints, dtype=float))
    if wp.ndim != 2:
        raise PathError("waypoints must be a list of equal-length vectors")
    if wp.shape[0] < 2:
        raise PathError("need at least 2 waypoints")
    if parameterization == "uniform":
        knots = np.linspace(0.0, 1.0, wp.shape[0])
    elif parameterization == "chord_length":
        seg = np.linalg.norm(np.diff(wp, axis=0), axis=1)
        if np.any(seg == 0):
            # repeated waypoints collapse chords; fall back to tiny positive
            seg = np.maximum(seg, 1e-12)
        knots = np.concatenate([[0.0], np.cumsum(seg)])
        knots /= knots[-1]
    else:
        raise PathError(f"unknown parameterization {parameterization!r}")
    if wp.shape[0] == 2:
        # natural spline of 2 points is the straight segment; CubicSpline
        # needs >= 3 points for bc_type="natural", so insert the midpoint
        mid = 0.5 * (wp[0] + wp[1])
        wp_fit = np.vstack([wp[0], mid, wp[1]])
        knots_fit = np.array([knots[0], 0.5 * (knots[0] + knots[1]), knots[1]])
    else:
        wp_fit, knots_fit = wp, knots
    splines = tuple(
        CubicSpline(knots_fit, wp_fit[:, j], bc_type="natural")
        for j in range(wp.shape[1])
    )
    return JointPath(waypoints=wp, knots=knots, splines=splines)


def make_grid(N: int, spacing="uniform") -> PathGrid:
    """Build the s-grid with N segments.

    spacing is either "uniform" or an explicit strictly increasing list
    from 0 to 1 with N+1 entries.
    """
    if N < 3:
        raise PathError("N must be at least 3")
    if isinstance(spacing, str):
        if spacing != "uniform":
            raise PathError(f"unknown spacing {spacing!r}")
        return PathGrid(np.linspace(0.0, 1.0, N + 1))
    s = np.asarray(spacing, dtype=float)
    if s.size != N + 1:
        raise PathError("custom spacing must have N+1 entries")
    return PathGrid(s)


def sample_path(path: JointPath, grid: PathGrid) -> PathSamples:
    """Evaluate the spline and its analytic derivatives on the grid."""
    s = grid.s_values
    return PathSamples(
        q=path.position(s),
        dq_ds=path.derivative(s),
        d2q_ds2=path.second_derivative(s),
    )


def samples_from_arrays(s_values, q, dq, ddq) -> tuple[PathGrid, PathSamples]:
    """Direct-sample ingestion bypassing splining entirely."""
    grid = PathGrid(np.asarray(s_values, dtype=float))
    samples = PathSamples(q=q, dq_ds=dq, d2q_ds2=ddq)
    if samples.n_points != grid.N + 1:
        raise PathError("sample arrays must match the grid length")
    return grid, samples
