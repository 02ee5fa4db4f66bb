/**
 * Duration bar chart from one or more jerk-sweep comparison tables
 * (the planner CLI's .compare.json output): one group per motion, one
 * bar for the unconstrained baseline plus one per sweep limit.
 */

import { BarGroup, PALETTE, renderBarChart } from "./svg.js";

export interface CompareTable {
  baseline: { duration_s: number; status: string };
  sweep: {
    jerk_limit: number;
    status: string;
    duration_s?: number;
    ratio?: number;
  }[];
}

export interface Motion {
  label: string;
  table: CompareTable;
}

export function plotDurations(motions: Motion[]): string {
  if (motions.length === 0) {
    throw new Error("duration plot needs at least one comparison table");
  }
  const groups: BarGroup[] = motions.map((m) => {
    if (!m.table.baseline || typeof m.table.baseline.duration_s !== "number") {
      throw new Error(`comparison table for '${m.label}' has no baseline`);
    }
    const bars = [
      { label: "no jerk limit", value: m.table.baseline.duration_s, color: PALETTE[0] },
    ];
    m.table.sweep.forEach((entry, i) => {
      if (typeof entry.duration_s === "number") {
        bars.push({
          label: `jerk <= ${entry.jerk_limit}`,
          value: entry.duration_s,
          color: PALETTE[(i + 1) % PALETTE.length],
        });
      }
    });
    return { label: m.label, bars };
  });
  return renderBarChart("Motion duration", "T [s]", groups);
}
