import { mkdirSync, readFileSync, writeFileSync } from "fs";
import { join } from "path";
import { describe, expect, it } from "vitest";

import { column, parseTrajectoryCsv } from "../src/csv.js";
import { plotDurations } from "../src/durations.js";
import { plotPhasePlane } from "../src/phase_plane.js";
import { plotProfiles } from "../src/profiles.js";

const GOLDEN = join(__dirname, "..", "..", "golden");
const OUT = join(__dirname, "..", "out");
mkdirSync(OUT, { recursive: true });

const demoCsv = readFileSync(join(GOLDEN, "demo.traj.csv"), "utf8");
const demoNojerkCsv = readFileSync(join(GOLDEN, "demo_nojerk.traj.csv"), "utf8");
const twolinkCsv = readFileSync(join(GOLDEN, "twolink.traj.csv"), "utf8");
const demoRobot = JSON.parse(
  readFileSync(join(GOLDEN, "demo.robot.json"), "utf8"),
);
const twolinkRobot = JSON.parse(
  readFileSync(join(GOLDEN, "twolink.robot.json"), "utf8"),
);
const compareTable = JSON.parse(
  readFileSync(join(GOLDEN, "twolink.compare.json"), "utf8"),
);

describe("trajectory CSV parsing", () => {
  it("reads the single-joint golden trajectory", () => {
    const traj = parseTrajectoryCsv(demoCsv);
    expect(traj.nJoints).toBe(1);
    expect(traj.hasTorque).toBe(false);
    expect(traj.nPoints).toBeGreaterThan(10);
    expect(column(traj, "t")[0]).toBe(0);
  });

  it("detects torque columns on the dynamic model", () => {
    const traj = parseTrajectoryCsv(twolinkCsv);
    expect(traj.nJoints).toBe(2);
    expect(traj.hasTorque).toBe(true);
  });

  it("rejects an empty CSV", () => {
    expect(() => parseTrajectoryCsv("")).toThrow(/no data rows/);
    expect(() => parseTrajectoryCsv("k,s,t,x\n")).toThrow(/no data rows/);
  });

  it("rejects a CSV without the required columns", () => {
    expect(() => parseTrajectoryCsv("a,b\n1,2\n")).toThrow(/missing column/);
  });
});

describe("phase-plane figure", () => {
  it("renders a single curve with labeled axes", () => {
    const svg = plotPhasePlane([{ csv: demoCsv, label: "jerk on" }]);
    writeFileSync(join(OUT, "phase_single.svg"), svg);
    expect(svg).toContain("<svg");
    expect((svg.match(/class="series"/g) ?? []).length).toBe(1);
    expect(svg).toContain(">s<");
    expect(svg).toContain(">sdot<");
  });

  it("renders the jerk on/off pair with the limited curve never faster", () => {
    const svg = plotPhasePlane([
      { csv: demoNojerkCsv, label: "no jerk limit" },
      { csv: demoCsv, label: "jerk limited" },
    ]);
    writeFileSync(join(OUT, "phase_pair.svg"), svg);
    expect((svg.match(/class="series"/g) ?? []).length).toBe(2);
    const xOn = column(parseTrajectoryCsv(demoCsv), "x");
    const xOff = column(parseTrajectoryCsv(demoNojerkCsv), "x");
    const peakOn = Math.max(...xOn.map(Math.sqrt));
    const peakOff = Math.max(...xOff.map(Math.sqrt));
    expect(peakOn).toBeLessThanOrEqual(peakOff + 1e-9);
  });

  it("fails on no inputs", () => {
    expect(() => plotPhasePlane([])).toThrow(/at least one/);
  });
});

describe("profile figure", () => {
  it("renders stacked panels with limit lines", () => {
    const svg = plotProfiles(demoCsv, demoRobot.limits);
    writeFileSync(join(OUT, "profiles_demo.svg"), svg);
    expect(svg).toContain("Joint velocity");
    expect(svg).toContain("Joint acceleration");
    expect(svg).toContain("Joint jerk");
    expect(svg).toContain("ref-line");
    expect(svg).toContain("+jerk_max[0]");
  });

  it("shows the jerk trace saturating at the configured bound", () => {
    const traj = parseTrajectoryCsv(demoCsv);
    const jerk = column(traj, "jerk0");
    const bound = demoRobot.limits.jerk_max[0];
    const peak = Math.max(...jerk.map(Math.abs));
    expect(peak).toBeGreaterThan(0.98 * bound);
    expect(peak).toBeLessThanOrEqual(bound * (1 + 1e-6));
  });

  it("adds a torque panel for the dynamic model", () => {
    const svg = plotProfiles(twolinkCsv, twolinkRobot.limits);
    writeFileSync(join(OUT, "profiles_twolink.svg"), svg);
    expect(svg).toContain("Joint torque");
    expect(svg).toContain("+tau_max[1]");
  });

  it("renders flat traces for a zero-motion trajectory", () => {
    const header = "k,s,t,x,q0,qd0,qdd0,jerk0";
    const rows = [0, 1, 2, 3].map(
      (k) => `${k},${k / 3},${k},0,0.5,0,0,0`,
    );
    const svg = plotProfiles([header, ...rows].join("\n"), {
      qd_max: [1],
      qdd_max: [1],
      jerk_max: [1],
    });
    expect(svg).toContain("Joint jerk");
  });

  it("rejects a joint-count mismatch", () => {
    expect(() =>
      plotProfiles(twolinkCsv, { qd_max: [1], qdd_max: [1], jerk_max: [1] }),
    ).toThrow(/joints/);
  });
});

describe("duration bar chart", () => {
  it("renders baseline plus sweep bars for one motion", () => {
    const svg = plotDurations([{ label: "twolink", table: compareTable }]);
    writeFileSync(join(OUT, "durations.svg"), svg);
    const bars = (svg.match(/class="bar"/g) ?? []).length;
    expect(bars).toBe(1 + compareTable.sweep.length);
    expect(svg).toContain("no jerk limit");
  });

  it("tightening the limit never shortens the motion", () => {
    const durations = [
      compareTable.baseline.duration_s,
      ...compareTable.sweep.map((r: { duration_s: number }) => r.duration_s),
    ];
    for (let i = 1; i < durations.length; i++) {
      expect(durations[i]).toBeGreaterThanOrEqual(durations[i - 1] - 1e-9);
    }
  });

  it("fails on an empty table list", () => {
    expect(() => plotDurations([])).toThrow(/at least one/);
  });

  it("fails on a table without a baseline", () => {
    expect(() =>
      plotDurations([{ label: "x", table: { sweep: [] } as never }]),
    ).toThrow(/baseline/);
  });
});
