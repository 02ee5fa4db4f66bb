/**
 * Phase-plane figure: path-speed curve sdot = sqrt(x) against the path
 * coordinate s, one curve per trajectory.
 */

import { column, parseTrajectoryCsv } from "./csv.js";
import { PALETTE, Panel, renderFigure } from "./svg.js";

export interface PhaseInput {
  csv: string;
  label: string;
}

export function plotPhasePlane(inputs: PhaseInput[]): string {
  if (inputs.length === 0) {
    throw new Error("phase-plane plot needs at least one trajectory");
  }
  const panel: Panel = {
    title: "Phase plane",
    xLabel: "s",
    yLabel: "sdot",
    series: inputs.map((inp, i) => {
      const traj = parseTrajectoryCsv(inp.csv);
      return {
        x: column(traj, "s"),
        y: column(traj, "x").map(Math.sqrt),
        label: inp.label,
        color: PALETTE[i % PALETTE.length],
        dash: i > 0 ? "6,3" : undefined,
      };
    }),
  };
  return renderFigure([panel]);
}
