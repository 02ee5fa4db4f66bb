#!/usr/bin/env python3
"""Regenerate the golden CLI outputs consumed by the plotting package.

Writes to golden/ at the repository root. Deterministic: repeated runs
produce byte-identical files.
"""

import json
import os
import sys

import numpy as np

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, os.path.join(ROOT, "src"))

from totp3.cli import main  # noqa: E402

GOLDEN = os.path.join(ROOT, "golden")


def write_json(name, data):
    with open(os.path.join(GOLDEN, name), "w") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")


def demo_inputs():
    """Single-joint straight path with a jerk limit tight enough that the
    converged jerk trace saturates at the bound."""
    N = 24
    s = np.linspace(0.0, 1.0, N + 1)
    path = {"s": s.tolist(), "q": [[v] for v in s],
            "dq": [[1.0]] * (N + 1), "ddq": [[0.0]] * (N + 1)}
    robot = {"model": "kinematic",
             "limits": {"qd_max": [1.0], "qdd_max": [1.0],
                        "jerk_max": [5.0]}}
    write_json("demo.path.json", path)
    write_json("demo.robot.json", robot)


def twolink_inputs():
    sys.path.insert(0, os.path.join(ROOT, "tests"))
    from corpus import two_link_instance
    inst = two_link_instance(200)
    path = {"s": inst.grid.s_values.tolist(), "q": inst.samples.q.tolist(),
            "dq": inst.samples.dq_ds.tolist(),
            "ddq": inst.samples.d2q_ds2.tolist()}
    robot = {"model": "two_link", "params": {"gravity": 9.81},
             "limits": {"qd_max": [2.0, 2.0], "qdd_max": [8.0, 8.0],
                        "jerk_max": [60.0, 60.0], "tau_max": [80.0, 30.0]}}
    write_json("twolink.path.json", path)
    write_json("twolink.robot.json", robot)


def run(argv):
    rc = main(argv)
    if rc != 0:
        raise SystemExit(f"golden run failed ({rc}): {argv}")


if __name__ == "__main__":
    os.makedirs(GOLDEN, exist_ok=True)
    demo_inputs()
    twolink_inputs()
    g = lambda name: os.path.join(GOLDEN, name)
    run(["plan", g("demo.path.json"), g("demo.robot.json"),
         "--jerk-limit", "on", "--out-prefix", g("demo")])
    run(["plan", g("demo.path.json"), g("demo.robot.json"),
         "--jerk-limit", "off", "--out-prefix", g("demo_nojerk")])
    run(["plan", g("twolink.path.json"), g("twolink.robot.json"),
         "--jerk-limit", "on", "--out-prefix", g("twolink")])
    run(["compare", g("twolink.path.json"), g("twolink.robot.json"),
         "--jerk-sweep", "1000", "100", "30",
         "--out-prefix", g("twolink")])
    print("golden files written to", GOLDEN)
