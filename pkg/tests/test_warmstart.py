import numpy as np
import pytest

from totp3 import Limits, travel_time, verify_profile, warm_start
from totp3.dynamics import PathDynamicsCoefficients
from totp3.path_model import make_grid, samples_from_arrays
from totp3.warmstart import (ReachableInterval, WarmStartError,
                             fallback_nominal, step_interval, velocity_caps)

from corpus import kinematic_instance, two_link_instance

EMPTY = PathDynamicsCoefficients(m=np.zeros(0), c=np.zeros(0), g=np.zeros(0))


def straight_1j(N=4):
    grid = make_grid(N)
    K = N + 1
    _, samples = samples_from_arrays(grid.s_values, grid.s_values[:, None],
                                     np.ones((K, 1)), np.zeros((K, 1)))
    return grid, samples


def test_step_interval_pure_step_bound():
    # |x_{k+1} - x_k| <= 1 from a point at 0 reaches [0, 1]
    a0 = np.array([-1.0, 1.0])
    a1 = np.array([1.0, -1.0])
    b = np.array([1.0, 1.0])
    iv = step_interval(a0, a1, b, ReachableInterval(0.0, 0.0), "forward")
    assert iv.lo == pytest.approx(0.0, abs=1e-9)
    assert iv.hi == pytest.approx(1.0, abs=1e-9)


def test_step_interval_with_cap():
    a0 = np.array([-1.0, 1.0])
    a1 = np.array([1.0, -1.0])
    b = np.array([1.0, 1.0])
    iv = step_interval(a0, a1, b, ReachableInterval(0.0, 1.0), "forward",
                       cap=1.0)
    assert iv.hi == pytest.approx(1.0, abs=1e-9)


def test_step_interval_matches_grid_membership_oracle():
    rng = np.random.default_rng(7)
    for _ in range(30):
        m = int(rng.integers(2, 6))
        a0 = rng.normal(size=m)
        a1 = rng.normal(size=m)
        b = rng.normal(size=m) + 1.5
        lo, hi = np.sort(rng.uniform(0, 1.5, 2))
        given = ReachableInterval(lo, hi)
        xs = np.linspace(0, 3, 601)
        ys = np.linspace(lo, hi, 101)
        # oracle: x feasible iff some y in [lo,hi] satisfies all rows
        ok = np.zeros(xs.size, dtype=bool)
        for i, xv in enumerate(xs):
            lhs = a1[None, :] * ys[:, None] + a0[None, :] * xv
            ok[i] = np.any(np.all(lhs <= b[None, :] + 1e-9, axis=1))
        try:
            iv = step_interval(a0, a1, b, given, "backward", cap=3.0)
        except WarmStartError:
            assert not ok.any()
            continue
        feas_x = xs[ok]
        assert iv.lo <= feas_x.min() + 1e-2
        assert iv.hi >= feas_x.max() - 1e-2
        # and no feasible x outside the interval by more than grid spacing
        assert feas_x.min() >= iv.lo - 1e-2
        assert feas_x.max() <= iv.hi + 1e-2


def test_warm_start_small_instance_analytic():
    # q(s) = s, qd_max = qdd_max = 1, N = 4: the acceleration rows allow
    # |x_{k+1} - x_k| <= 2*0.25, velocity caps x <= 1, so the greedy
    # profile ramps 0, .5, 1, .5, 0 and T = 2*(0.25/.707 + 0.25/1.707)*2
    grid, samples = straight_1j(N=4)
    limits = Limits(qd_max=[1.0], qdd_max=[1.0], jerk_max=[1.0])
    prof = warm_start(samples, EMPTY, grid, limits)
    assert np.allclose(prof.x, [0, 0.5, 1.0, 0.5, 0], atol=1e-8)
    expect_T = 2 * (2 * 0.25 / np.sqrt(0.5)
                    + 2 * 0.25 / (np.sqrt(0.5) + 1.0))
    assert travel_time(prof, grid) == pytest.approx(expect_T, abs=1e-7)


def test_warm_start_velocity_saturation_at_loose_acceleration():
    grid, samples = straight_1j(N=6)
    limits = Limits(qd_max=[0.8], qdd_max=[1e6], jerk_max=[1.0])
    prof = warm_start(samples, EMPTY, grid, limits)
    caps = velocity_caps(samples, limits)
    assert np.allclose(prof.x[1:-1], caps[1:-1], atol=1e-7)


def test_warm_start_satisfies_rows():
    for inst in (kinematic_instance(1), kinematic_instance(101, n_joints=3),
                 two_link_instance(201)):
        prof = warm_start(inst.samples, inst.coeffs, inst.grid, inst.limits)
        rep = verify_profile(prof, inst.samples, inst.coeffs, inst.grid,
                             inst.limits, check_jerk=False)
        assert rep.feasible, (inst.name, rep.violations[:3])


def test_warm_start_beats_or_matches_feasible_profiles():
    # pointwise-max greedy dominates a random feasible profile in time
    inst = kinematic_instance(5)
    prof = warm_start(inst.samples, inst.coeffs, inst.grid, inst.limits)
    scaled = prof.x.copy()
    scaled[1:-1] *= 0.7
    from totp3 import SquaredSpeedProfile
    slower = SquaredSpeedProfile(x=scaled)
    assert travel_time(prof, inst.grid) <= travel_time(slower, inst.grid)


def test_warm_start_infeasible_instance_reports_index():
    # torque limit below static gravity torque everywhere
    grid, samples = straight_1j(N=4)
    coeffs = PathDynamicsCoefficients(m=np.zeros((5, 1)),
                                      c=np.zeros((5, 1)),
                                      g=np.full((5, 1), 10.0))
    limits = Limits(qd_max=[1], qdd_max=[1], jerk_max=[1], tau_max=[5.0])
    from totp3.constraints import InfeasibleConstraintError
    with pytest.raises((WarmStartError, InfeasibleConstraintError)):
        warm_start(samples, coeffs, grid, limits)


def test_fallback_nominal_positive_and_capped():
    inst = kinematic_instance(9)
    prof = fallback_nominal(inst.samples, inst.limits)
    assert np.all(prof.x[1:-1] > 0)
    caps = velocity_caps(inst.samples, inst.limits)
    assert np.all(prof.x[1:-1] <= caps[1:-1] + 1e-12)
