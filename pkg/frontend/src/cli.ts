#!/usr/bin/env node
/**
 * Figure generation from planner CLI outputs.
 *
 * Usage:
 *   node dist/cli.js phase <out.svg> <traj.csv> [label=]<more.csv> ...
 *   node dist/cli.js profiles <out.svg> <traj.csv> <robot.json>
 *   node dist/cli.js durations <out.svg> [label=]<compare.json> ...
 */

import { readFileSync, writeFileSync } from "fs";
import { basename } from "path";

import { plotDurations } from "./durations.js";
import { plotPhasePlane } from "./phase_plane.js";
import { plotProfiles } from "./profiles.js";

function labelled(arg: string): { label: string; file: string } {
  const eq = arg.indexOf("=");
  if (eq > 0) return { label: arg.slice(0, eq), file: arg.slice(eq + 1) };
  return { label: basename(arg).replace(/\..*$/, ""), file: arg };
}

export function run(argv: string[]): number {
  const [cmd, out, ...rest] = argv;
  if (!cmd || !out || rest.length === 0) {
    process.stderr.write(
      "usage: cli.js phase|profiles|durations <out.svg> <inputs...>\n",
    );
    return 1;
  }
  let svg: string;
  if (cmd === "phase") {
    svg = plotPhasePlane(
      rest.map(labelled).map(({ label, file }) => ({
        label,
        csv: readFileSync(file, "utf8"),
      })),
    );
  } else if (cmd === "profiles") {
    const [csvFile, robotFile] = rest;
    if (!robotFile) {
      process.stderr.write("profiles needs <traj.csv> <robot.json>\n");
      return 1;
    }
    const robot = JSON.parse(readFileSync(robotFile, "utf8"));
    svg = plotProfiles(readFileSync(csvFile, "utf8"), robot.limits ?? robot);
  } else if (cmd === "durations") {
    svg = plotDurations(
      rest.map(labelled).map(({ label, file }) => ({
        label,
        table: JSON.parse(readFileSync(file, "utf8")),
      })),
    );
  } else {
    process.stderr.write(`unknown command '${cmd}'\n`);
    return 1;
  }
  writeFileSync(out, svg);
  return 0;
}

if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(run(process.argv.slice(2)));
}
