/**
 * Trajectory CSV parsing.
 *
 * The planner CLI writes one row per grid point with columns
 *   k, s, t, x, then per joint: q<j>, qd<j>, qdd<j>, jerk<j> [, tau<j>]
 */

export interface Trajectory {
  columns: string[];
  /** column-major numeric data, keyed by column name */
  data: Map<string, number[]>;
  nPoints: number;
  nJoints: number;
  hasTorque: boolean;
}

export function parseTrajectoryCsv(text: string): Trajectory {
  const lines = text
    .split("\n")
    .map((l) => l.trim())
    .filter((l) => l.length > 0);
  if (lines.length < 2) {
    throw new Error("trajectory CSV has no data rows");
  }
  const columns = lines[0].split(",");
  for (const required of ["k", "s", "t", "x"]) {
    if (!columns.includes(required)) {
      throw new Error(`trajectory CSV missing column '${required}'`);
    }
  }
  const data = new Map<string, number[]>(columns.map((c) => [c, []]));
  for (const line of lines.slice(1)) {
    const parts = line.split(",");
    if (parts.length !== columns.length) {
      throw new Error(
        `row has ${parts.length} fields, header has ${columns.length}`,
      );
    }
    parts.forEach((p, i) => {
      const v = Number(p);
      if (!Number.isFinite(v)) {
        throw new Error(`non-numeric value '${p}' in column ${columns[i]}`);
      }
      data.get(columns[i])!.push(v);
    });
  }
  let nJoints = 0;
  while (columns.includes(`q${nJoints}`)) nJoints += 1;
  if (nJoints === 0) {
    throw new Error("trajectory CSV has no joint columns");
  }
  return {
    columns,
    data,
    nPoints: lines.length - 1,
    nJoints,
    hasTorque: columns.includes("tau0"),
  };
}

export function column(traj: Trajectory, name: string): number[] {
  const col = traj.data.get(name);
  if (col === undefined) {
    throw new Error(`trajectory CSV missing column '${name}'`);
  }
  return col;
}
