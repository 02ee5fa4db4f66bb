"""JSON input formats: path files and robot config files."""

from __future__ import annotations

import json

import numpy as np

from .constraints import Limits
from .dynamics import DynamicsModel, TwoLinkParams
from .path_model import (JointPath, PathGrid, PathSamples, fit_spline,
                         make_grid, sample_path, samples_from_arrays)


class InputError(ValueError):
    """Malformed input file."""


def load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError as err:
        raise InputError(f"cannot read {path}: {err}") from err
    except json.JSONDecodeError as err:
        raise InputError(f"{path}:{err.lineno}: {err.msg}") from err


def load_path(path_file: str, n_segments: int = 50):
    """Load either a waypoint path (splined) or direct derivative samples.

    Returns (grid, samples).
    """
    data = load_json(path_file)
    if "waypoints" in data:
        wp = np.asarray(data["waypoints"], dtype=float)
        if "n" in data and wp.shape[1] != data["n"]:
            raise InputError("waypoint dimension does not match 'n'")
        param = data.get("parameterization", "uniform")
        path = fit_spline(wp, parameterization=param)
        grid = make_grid(n_segments)
        return grid, sample_path(path, grid)
    if {"s", "q", "dq", "ddq"} <= set(data):
        return samples_from_arrays(data["s"], data["q"], data["dq"],
                                   data["ddq"])
    raise InputError(
        "path file needs either 'waypoints' or 's'/'q'/'dq'/'ddq'")


def load_robot(robot_file: str):
    """Returns (model, limits) from a robot config file."""
    data = load_json(robot_file)
    kind = data.get("model", "kinematic")
    if kind == "kinematic":
        model = DynamicsModel(variant="kinematic_only")
    elif kind == "two_link":
        params = {k: v for k, v in data.get("params", {}).items()}
        model = DynamicsModel(variant="two_link_planar",
                              two_link=TwoLinkParams(**params))
    elif kind == "tabulated":
        tab = data.get("coefficients")
        if tab is None:
            raise InputError("tabulated model needs 'coefficients': {m, c, g}")
        model = DynamicsModel(
            variant="tabulated",
            tabulated=(np.asarray(tab["m"], dtype=float),
                       np.asarray(tab["c"], dtype=float),
                       np.asarray(tab["g"], dtype=float)))
    else:
        raise InputError(f"unknown model kind {kind!r}")
    lim = data.get("limits")
    if lim is None:
        raise InputError("robot file needs a 'limits' section")
    try:
        limits = Limits(
            qd_max=np.asarray(lim["qd_max"], dtype=float),
            qdd_max=np.asarray(lim["qdd_max"], dtype=float),
            jerk_max=np.asarray(lim["jerk_max"], dtype=float),
            tau_max=(np.asarray(lim["tau_max"], dtype=float)
                     if "tau_max" in lim else None))
    except KeyError as err:
        raise InputError(f"limits section missing {err}") from err
    if model.is_kinematic and limits.tau_max is not None:
        raise InputError("tau_max given but the model is kinematic")
    if not model.is_kinematic and limits.tau_max is None:
        raise InputError("dynamic model requires tau_max")
    return model, limits
