/**
 * Minimal dependency-free SVG chart primitives: line panels with axes,
 * reference lines, legends, and grouped bar charts.
 */

export interface Series {
  x: number[];
  y: number[];
  label: string;
  color: string;
  dash?: string;
}

export interface RefLine {
  y: number;
  label: string;
  color: string;
  dash?: string;
}

export interface Panel {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
  refLines?: RefLine[];
}

export const PALETTE = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#17becf",
];

const W = 640;
const PANEL_H = 240;
const MARGIN = { left: 64, right: 16, top: 28, bottom: 40 };

function esc(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
}

interface Scale {
  (v: number): number;
  domain: [number, number];
}

function linScale(domain: [number, number], range: [number, number]): Scale {
  let [d0, d1] = domain;
  if (d0 === d1) {
    d0 -= 1;
    d1 += 1;
  }
  const f = ((v: number) =>
    range[0] + ((v - d0) / (d1 - d0)) * (range[1] - range[0])) as Scale;
  f.domain = [d0, d1];
  return f;
}

function ticks(lo: number, hi: number, n = 5): number[] {
  const span = hi - lo;
  if (span <= 0) return [lo];
  const raw = span / n;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => span / s <= n)!;
  const out: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-12; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return out;
}

function fmtTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) return v.toExponential(1);
  return Number(v.toPrecision(4)).toString();
}

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return [lo, hi];
}

/** Render one line-chart panel at the given vertical offset. */
function renderPanel(panel: Panel, yOffset: number): string {
  const x0 = MARGIN.left;
  const x1 = W - MARGIN.right;
  const y0 = yOffset + PANEL_H - MARGIN.bottom;
  const y1 = yOffset + MARGIN.top;

  const allX = panel.series.flatMap((s) => s.x);
  const allY = panel.series.flatMap((s) => s.y);
  for (const r of panel.refLines ?? []) allY.push(r.y);
  const [xLo, xHi] = extent(allX);
  let [yLo, yHi] = extent(allY);
  const pad = 0.05 * (yHi - yLo || 1);
  yLo -= pad;
  yHi += pad;
  const sx = linScale([xLo, xHi], [x0, x1]);
  const sy = linScale([yLo, yHi], [y0, y1]);

  const parts: string[] = [];
  parts.push(
    `<rect x="${x0}" y="${y1}" width="${x1 - x0}" height="${y0 - y1}" fill="none" stroke="#999"/>`,
  );
  for (const tx of ticks(sx.domain[0], sx.domain[1])) {
    const px = sx(tx);
    parts.push(
      `<line x1="${px}" y1="${y0}" x2="${px}" y2="${y0 + 4}" stroke="#333"/>`,
      `<text x="${px}" y="${y0 + 16}" font-size="10" text-anchor="middle">${fmtTick(tx)}</text>`,
    );
  }
  for (const ty of ticks(sy.domain[0], sy.domain[1])) {
    const py = sy(ty);
    parts.push(
      `<line x1="${x0 - 4}" y1="${py}" x2="${x0}" y2="${py}" stroke="#333"/>`,
      `<text x="${x0 - 7}" y="${py + 3}" font-size="10" text-anchor="end">${fmtTick(ty)}</text>`,
    );
  }
  for (const r of panel.refLines ?? []) {
    const py = sy(r.y);
    parts.push(
      `<line x1="${x0}" y1="${py}" x2="${x1}" y2="${py}" stroke="${r.color}" stroke-dasharray="${r.dash ?? "5,3"}" class="ref-line"/>`,
    );
    if (r.label) {
      parts.push(
        `<text x="${x1 - 4}" y="${py - 3}" font-size="9" fill="${r.color}" text-anchor="end">${esc(r.label)}</text>`,
      );
    }
  }
  panel.series.forEach((s, idx) => {
    const pts = s.x
      .map((xv, i) => `${sx(xv).toFixed(2)},${sy(s.y[i]).toFixed(2)}`)
      .join(" ");
    parts.push(
      `<polyline points="${pts}" fill="none" stroke="${s.color}" stroke-width="1.5"${s.dash ? ` stroke-dasharray="${s.dash}"` : ""} class="series"/>`,
    );
    parts.push(
      `<text x="${x0 + 8}" y="${y1 + 14 + 12 * idx}" font-size="10" fill="${s.color}">${esc(s.label)}</text>`,
    );
  });
  parts.push(
    `<text x="${(x0 + x1) / 2}" y="${y1 - 8}" font-size="12" text-anchor="middle" font-weight="bold">${esc(panel.title)}</text>`,
    `<text x="${(x0 + x1) / 2}" y="${y0 + 32}" font-size="11" text-anchor="middle">${esc(panel.xLabel)}</text>`,
    `<text x="${x0 - 48}" y="${(y0 + y1) / 2}" font-size="11" text-anchor="middle" transform="rotate(-90 ${x0 - 48} ${(y0 + y1) / 2})">${esc(panel.yLabel)}</text>`,
  );
  return parts.join("\n");
}

export function renderFigure(panels: Panel[]): string {
  if (panels.length === 0) throw new Error("no panels to render");
  for (const p of panels) {
    if (p.series.length === 0) throw new Error(`panel '${p.title}' is empty`);
  }
  const height = PANEL_H * panels.length;
  const body = panels.map((p, i) => renderPanel(p, i * PANEL_H)).join("\n");
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${W}" height="${height}" ` +
    `font-family="sans-serif">\n<rect width="100%" height="100%" fill="white"/>\n` +
    body +
    "\n</svg>\n"
  );
}

export interface BarGroup {
  label: string;
  bars: { label: string; value: number; color: string }[];
}

export function renderBarChart(
  title: string,
  yLabel: string,
  groups: BarGroup[],
): string {
  if (groups.length === 0 || groups.every((g) => g.bars.length === 0)) {
    throw new Error("no bars to render");
  }
  const x0 = MARGIN.left;
  const x1 = W - MARGIN.right;
  const y0 = PANEL_H + 40 - MARGIN.bottom;
  const y1 = MARGIN.top;
  const vMax = Math.max(...groups.flatMap((g) => g.bars.map((b) => b.value)));
  const sy = linScale([0, vMax * 1.1], [y0, y1]);
  const groupW = (x1 - x0) / groups.length;
  const parts: string[] = [
    `<rect x="${x0}" y="${y1}" width="${x1 - x0}" height="${y0 - y1}" fill="none" stroke="#999"/>`,
  ];
  for (const ty of ticks(0, vMax * 1.1)) {
    const py = sy(ty);
    parts.push(
      `<line x1="${x0 - 4}" y1="${py}" x2="${x0}" y2="${py}" stroke="#333"/>`,
      `<text x="${x0 - 7}" y="${py + 3}" font-size="10" text-anchor="end">${fmtTick(ty)}</text>`,
    );
  }
  groups.forEach((g, gi) => {
    const inner = groupW * 0.8;
    const barW = inner / g.bars.length;
    g.bars.forEach((b, bi) => {
      const bx = x0 + gi * groupW + groupW * 0.1 + bi * barW;
      const by = sy(b.value);
      parts.push(
        `<rect x="${bx.toFixed(2)}" y="${by.toFixed(2)}" width="${(barW * 0.9).toFixed(2)}" height="${(y0 - by).toFixed(2)}" fill="${b.color}" class="bar"><title>${esc(b.label)}: ${b.value}</title></rect>`,
      );
    });
    parts.push(
      `<text x="${x0 + (gi + 0.5) * groupW}" y="${y0 + 16}" font-size="10" text-anchor="middle">${esc(g.label)}</text>`,
    );
  });
  // shared legend from the first group's bar labels
  groups[0].bars.forEach((b, i) => {
    parts.push(
      `<rect x="${x0 + 8}" y="${y1 + 6 + 14 * i}" width="10" height="10" fill="${b.color}"/>`,
      `<text x="${x0 + 22}" y="${y1 + 15 + 14 * i}" font-size="10">${esc(b.label)}</text>`,
    );
  });
  parts.push(
    `<text x="${(x0 + x1) / 2}" y="${y1 - 8}" font-size="12" text-anchor="middle" font-weight="bold">${esc(title)}</text>`,
    `<text x="${x0 - 48}" y="${(y0 + y1) / 2}" font-size="11" text-anchor="middle" transform="rotate(-90 ${x0 - 48} ${(y0 + y1) / 2})">${esc(yLabel)}</text>`,
  );
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${W}" height="${PANEL_H + 40}" ` +
    `font-family="sans-serif">\n<rect width="100%" height="100%" fill="white"/>\n` +
    parts.join("\n") +
    "\n</svg>\n"
  );
}
