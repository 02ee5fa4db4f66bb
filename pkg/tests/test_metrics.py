import json

import numpy as np
import pytest

from totp3 import (Limits, SquaredSpeedProfile, slp_solve, travel_time,
                   true_cost, warm_start)
from totp3.dynamics import PathDynamicsCoefficients
from totp3.metrics import (build_trajectory, compute_metrics,
                           kinematics_series, metrics_json, timestamps,
                           torque_series, trajectory_csv)
from totp3.path_model import make_grid, samples_from_arrays

from corpus import kinematic_instance, two_link_instance

EMPTY = PathDynamicsCoefficients(m=np.zeros(0), c=np.zeros(0), g=np.zeros(0))


def straight_1j(N=8):
    grid = make_grid(N)
    K = N + 1
    _, samples = samples_from_arrays(grid.s_values, grid.s_values[:, None],
                                     np.ones((K, 1)), np.zeros((K, 1)))
    return grid, samples


def test_timestamps_constant_speed():
    # uniform x = c^2 means sdot = c everywhere, so T = 1/c
    grid = make_grid(5)
    c = 0.4
    prof = SquaredSpeedProfile(x=np.full(6, c * c), x_start=c * c,
                               x_end=c * c)
    t = timestamps(prof, grid)
    assert t[0] == 0.0
    assert np.all(np.diff(t) > 0)
    assert t[-1] == pytest.approx(1.0 / c, abs=1e-12)


def test_timestamps_rest_to_rest_triangle():
    grid = make_grid(4)
    prof = SquaredSpeedProfile(x=[0.0, 1.0, 4.0, 1.0, 0.0])
    t = timestamps(prof, grid)
    dt = np.diff(t)
    assert dt[0] == pytest.approx(2 * 0.25 / 1.0, abs=1e-12)
    assert dt[1] == pytest.approx(2 * 0.25 / 3.0, abs=1e-12)


def test_duration_equals_twice_cost():
    rng = np.random.default_rng(3)
    grid = make_grid(10)
    x = rng.uniform(0.1, 2.0, 11)
    prof = SquaredSpeedProfile(x=x, x_start=x[0], x_end=x[-1])
    t = timestamps(prof, grid)
    assert t[-1] == pytest.approx(2.0 * true_cost(prof, grid), abs=1e-12)


def test_timestamps_rejects_adjacent_zero_pair():
    grid = make_grid(4)
    with pytest.raises(ValueError):
        timestamps(SquaredSpeedProfile(x=[0, 0, 1, 1, 0]), grid)


def test_kinematics_series_straight_path():
    # q(s) = s: qd = sqrt(x), qdd = (x_{k+1} - x_k)/(2 delta)
    grid, samples = straight_1j(N=4)
    x = np.array([0.0, 0.5, 1.0, 0.5, 0.0])
    prof = SquaredSpeedProfile(x=x)
    qd, qdd, sdd, jerk = kinematics_series(prof, samples, grid)
    assert np.allclose(qd[:, 0], np.sqrt(x))
    d = grid.deltas
    assert np.allclose(qdd[:-1, 0], (x[1:] - x[:-1]) / (2 * d))
    # last point uses the backward difference
    assert qdd[-1, 0] == pytest.approx((x[4] - x[3]) / (2 * d[3]), abs=1e-14)
    # the last two jerk entries are padding
    assert np.all(jerk[-2:] == 0.0)


def test_zero_motion_series_are_zero():
    grid, samples = straight_1j(N=4)
    prof = SquaredSpeedProfile(x=np.zeros(5))
    qd, qdd, sdd, jerk = kinematics_series(prof, samples, grid)
    assert np.all(qd == 0) and np.all(qdd == 0) and np.all(jerk == 0)


def test_jerk_series_saturates_on_converged_profile():
    # with a tight jerk limit the converged profile should push some
    # true-jerk entry close to the bound without exceeding it
    grid, samples = straight_1j(N=8)
    limits = Limits(qd_max=[1.0], qdd_max=[1.0], jerk_max=[5.0])
    ws = warm_start(samples, EMPTY, grid, limits)
    prof, rep = slp_solve(samples, EMPTY, grid, limits, ws)
    assert rep.status == "converged"
    _, _, _, jerk = kinematics_series(prof, samples, grid)
    peak = np.max(np.abs(jerk))
    assert peak <= 5.0 + 1e-6
    assert peak >= 0.5 * 5.0


def test_torque_series_and_rms_constant_gravity():
    grid, samples = straight_1j(N=4)
    coeffs = PathDynamicsCoefficients(m=np.zeros((5, 1)), c=np.zeros((5, 1)),
                                      g=np.full((5, 1), 5.0))
    prof = SquaredSpeedProfile(x=[0, 0.5, 1.0, 0.5, 0])
    traj = build_trajectory(prof, samples, coeffs, grid)
    assert np.allclose(traj.tau, 5.0)
    assert traj.rms_torque[0] == pytest.approx(5.0, abs=1e-12)
    assert traj.peak_power[0] == pytest.approx(5.0 * np.max(traj.qd),
                                               abs=1e-12)


def test_metrics_record_shape():
    inst = two_link_instance(202)
    ws = warm_start(inst.samples, inst.coeffs, inst.grid, inst.limits)
    traj = build_trajectory(ws, inst.samples, inst.coeffs, inst.grid)
    record = compute_metrics(traj)
    assert record["duration_s"] == pytest.approx(
        travel_time(ws, inst.grid), abs=1e-12)
    assert len(record["per_joint"]) == 2
    for entry in record["per_joint"]:
        assert entry["rms_torque"] >= 0
        assert entry["peak_power"] >= 0


def test_trajectory_csv_kinematic_columns():
    inst = kinematic_instance(4)
    ws = warm_start(inst.samples, inst.coeffs, inst.grid, inst.limits)
    traj = build_trajectory(ws, inst.samples, inst.coeffs, inst.grid)
    text = trajectory_csv(traj)
    lines = text.strip().split("\n")
    assert lines[0] == "k,s,t,x,q0,qd0,qdd0,jerk0"
    assert len(lines) == inst.grid.N + 2
    first = lines[1].split(",")
    assert first[0] == "0" and float(first[2]) == 0.0


def test_trajectory_csv_torque_columns_present_for_dynamic():
    inst = two_link_instance(203)
    ws = warm_start(inst.samples, inst.coeffs, inst.grid, inst.limits)
    traj = build_trajectory(ws, inst.samples, inst.coeffs, inst.grid)
    header = trajectory_csv(traj).split("\n", 1)[0]
    assert "tau0" in header and "tau1" in header


def test_csv_roundtrip_precision():
    inst = kinematic_instance(6)
    ws = warm_start(inst.samples, inst.coeffs, inst.grid, inst.limits)
    traj = build_trajectory(ws, inst.samples, inst.coeffs, inst.grid)
    lines = trajectory_csv(traj).strip().split("\n")
    x_back = np.array([float(l.split(",")[3]) for l in lines[1:]])
    assert np.array_equal(x_back, traj.x)


def test_metrics_json_is_sorted_and_parseable():
    inst = kinematic_instance(7)
    ws = warm_start(inst.samples, inst.coeffs, inst.grid, inst.limits)
    traj = build_trajectory(ws, inst.samples, inst.coeffs, inst.grid)
    text = metrics_json(traj, {"status": "converged", "iterations": 3})
    record = json.loads(text)
    assert record["solver"]["status"] == "converged"
    assert text == json.dumps(record, indent=2, sort_keys=True) + "\n"


def test_velocity_integrates_back_to_position():
    # trapezoid integration of qd over t reproduces q on a fine grid
    grid, samples = straight_1j(N=200)
    limits = Limits(qd_max=[1.0], qdd_max=[2.0], jerk_max=[1e9])
    ws = warm_start(samples, EMPTY, grid, limits)
    traj = build_trajectory(ws, samples, EMPTY, grid)
    q_rec = traj.q[0, 0] + np.concatenate(
        [[0.0], np.cumsum(0.5 * (traj.qd[1:, 0] + traj.qd[:-1, 0])
                          * np.diff(traj.t))])
    assert np.max(np.abs(q_rec - traj.q[:, 0])) < 1e-2
