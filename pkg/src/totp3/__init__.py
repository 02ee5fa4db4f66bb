"""Jerk-constrained time-optimal path parameterization via sequential
linear programming with conservatively linearized third-order constraints."""

from .constraints import (ConstraintBlocks, InfeasibleConstraintError,
                          JerkLinearization, Limits, h_eval, linearize_h)
from .dynamics import (DynamicsModel, PathDynamicsCoefficients, TwoLinkParams,
                       compute_dynamics_coeffs, two_link_inverse_dynamics)
from .metrics import TrajectoryResult, build_trajectory, compute_metrics
from .oracle import dp_optimal_time
from .path_model import (JointPath, PathGrid, PathSamples, fit_spline,
                         make_grid, sample_path, samples_from_arrays)
from .planner import (SlpConfig, SlpReport, SquaredSpeedProfile, slp_solve,
                      travel_time, true_cost, verify_profile)
from .warmstart import WarmStartError, warm_start

__all__ = [
    "ConstraintBlocks", "DynamicsModel", "InfeasibleConstraintError",
    "JerkLinearization", "JointPath", "Limits", "PathDynamicsCoefficients",
    "PathGrid", "PathSamples", "SlpConfig", "SlpReport",
    "SquaredSpeedProfile", "TrajectoryResult", "TwoLinkParams",
    "WarmStartError", "build_trajectory", "compute_dynamics_coeffs",
    "compute_metrics", "dp_optimal_time", "fit_spline", "h_eval",
    "linearize_h", "make_grid", "sample_path", "samples_from_arrays",
    "slp_solve", "travel_time", "true_cost", "two_link_inverse_dynamics",
    "verify_profile", "warm_start",
]

__version__ = "0.1.0"
