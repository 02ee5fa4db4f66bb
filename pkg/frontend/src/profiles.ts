/**
 * Time-series figure: stacked velocity / acceleration / jerk panels,
 * one curve per joint, with dashed +/- limit lines from the robot
 * limits section.
 */

import { column, parseTrajectoryCsv, Trajectory } from "./csv.js";
import { PALETTE, Panel, RefLine, renderFigure } from "./svg.js";

export interface JointLimits {
  qd_max: number[];
  qdd_max: number[];
  jerk_max: number[];
  tau_max?: number[];
}

function limitLines(values: number[], name: string): RefLine[] {
  const out: RefLine[] = [];
  values.forEach((v, j) => {
    out.push(
      { y: v, label: `+${name}[${j}]`, color: "#666" },
      { y: -v, label: `-${name}[${j}]`, color: "#666" },
    );
  });
  return out;
}

function jointPanel(
  traj: Trajectory,
  t: number[],
  prefix: string,
  title: string,
  yLabel: string,
  limits: number[],
  limitName: string,
): Panel {
  const series = [];
  for (let j = 0; j < traj.nJoints; j++) {
    series.push({
      x: t,
      y: column(traj, `${prefix}${j}`),
      label: `joint ${j}`,
      color: PALETTE[j % PALETTE.length],
    });
  }
  return { title, xLabel: "t [s]", yLabel, series, refLines: limitLines(limits, limitName) };
}

export function plotProfiles(csv: string, limits: JointLimits): string {
  const traj = parseTrajectoryCsv(csv);
  for (const [name, arr] of [
    ["qd_max", limits.qd_max],
    ["qdd_max", limits.qdd_max],
    ["jerk_max", limits.jerk_max],
  ] as const) {
    if (!Array.isArray(arr) || arr.length !== traj.nJoints) {
      throw new Error(
        `limits.${name} has ${arr?.length ?? 0} entries, trajectory has ${traj.nJoints} joints`,
      );
    }
  }
  const t = column(traj, "t");
  const panels = [
    jointPanel(traj, t, "qd", "Joint velocity", "qd [rad/s]", limits.qd_max, "qd_max"),
    jointPanel(traj, t, "qdd", "Joint acceleration", "qdd [rad/s^2]", limits.qdd_max, "qdd_max"),
    jointPanel(traj, t, "jerk", "Joint jerk", "jerk [rad/s^3]", limits.jerk_max, "jerk_max"),
  ];
  if (traj.hasTorque && limits.tau_max) {
    panels.push(
      jointPanel(traj, t, "tau", "Joint torque", "tau [Nm]", limits.tau_max, "tau_max"),
    );
  }
  return renderFigure(panels);
}
