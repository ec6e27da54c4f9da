/**
 * Figure assembly: measured points from the result table, closed-form
 * prediction overlays evaluated at the same radii, and density heatmaps
 * from the run summary.  No physics is recomputed here.
 */

import {
  EmptyTableError,
  ResultRow,
  RunSummary,
  summaryAlpha,
} from "./schema";
import { arealPhase, curveRadii, partialCapturePhase } from "./predictions";
import {
  DEFAULT_FRAME,
  Frame,
  LegendEntry,
  PALETTE,
  Scale,
  axes,
  circle,
  document,
  legend,
  line,
  linearScale,
  padDomain,
  plotArea,
  polygon,
  polyline,
  rect,
  text,
} from "./svg";

export const PLOT_KINDS = ["phase_vs_R", "charge_vs_R", "exchange_vs_R", "density_map"] as const;
export type PlotKind = (typeof PLOT_KINDS)[number];

interface Point {
  series: string;
  x: number;
  y: number;
}

function seriesNames(points: Point[]): string[] {
  return [...new Set(points.map((p) => p.series))].sort();
}

function extent(values: number[]): [number, number] {
  return [Math.min(...values), Math.max(...values)];
}

function median(values: number[]): number {
  const s = [...values].sort((a, b) => a - b);
  const n = s.length;
  return n % 2 ? s[(n - 1) / 2] : (s[n / 2 - 1] + s[n / 2]) / 2;
}

function scatter(points: Point[], xScale: Scale, yScale: Scale): { body: string; legends: LegendEntry[] } {
  const names = seriesNames(points);
  const parts: string[] = [];
  const legends: LegendEntry[] = [];
  names.forEach((name, i) => {
    const color = PALETTE[i % PALETTE.length];
    legends.push({ label: name, color, kind: "point" });
    for (const p of points.filter((q) => q.series === name)) {
      parts.push(circle(xScale.map(p.x), yScale.map(p.y), 3.5, color, ' class="datapoint"'));
    }
  });
  return { body: parts.join("\n"), legends };
}

function frameFor(): Frame {
  return { ...DEFAULT_FRAME };
}

/** Measured loop phases vs radius with both closed-form laws at q* = +/-1. */
function renderPhaseVsR(rows: ResultRow[], summary: RunSummary | null): string {
  const points: Point[] = rows
    .filter((r) => (r.phi_unwrapped ?? r.phi_mod) !== null)
    .map((r) => ({ series: r.experiment_id, x: r.R, y: (r.phi_unwrapped ?? r.phi_mod) as number }));
  if (!points.length) throw new EmptyTableError("no rows carry a measured phase");

  const alpha = summaryAlpha(summary) ?? 0;
  const dataR = [...new Set(points.map((p) => p.x))].sort((a, b) => a - b);
  const dphiCurve = Math.max(...rows.map((r) => r.delta_phi));
  const rs = curveRadii(dataR);

  const curves: Array<{ label: string; dash: boolean; color: string; ys: number[] }> = [];
  for (const qStar of [1, -1]) {
    curves.push({
      label: `defect capture q*=${qStar > 0 ? "+1" : "-1"}`,
      dash: true,
      color: qStar > 0 ? "#444444" : "#999999",
      ys: rs.map((r) => partialCapturePhase(r, dphiCurve, qStar) + arealPhase(r, 0, alpha, qStar)),
    });
    curves.push({
      label: `areal law q*=${qStar > 0 ? "+1" : "-1"}`,
      dash: false,
      color: qStar > 0 ? "#444444" : "#999999",
      ys: rs.map((r) => arealPhase(r, dphiCurve, alpha, qStar)),
    });
  }

  // one-branch uncertainty band around the zero-defect areal prediction,
  // with the overall sign taken from the measured data
  const qHat = median(points.map((p) => p.y)) < 0 ? -1 : 1;
  const bandMid = rs.map((r) => arealPhase(r, 0, alpha, qHat));

  const yValues = points
    .map((p) => p.y)
    .concat(...curves.map((c) => c.ys))
    .concat(bandMid.map((y) => y + Math.PI), bandMid.map((y) => y - Math.PI));
  const f = frameFor();
  const a = plotArea(f);
  const xScale = linearScale(padDomain(...extent(dataR)), [a.x0, a.x1]);
  const yScale = linearScale(padDomain(...extent(yValues)), [a.y1, a.y0]);

  const band: Array<[number, number]> = rs
    .map((r, i) => [xScale.map(r), yScale.map(bandMid[i] + Math.PI)] as [number, number])
    .concat(rs.map((r, i) => [xScale.map(r), yScale.map(bandMid[i] - Math.PI)] as [number, number]).reverse());

  const sc = scatter(points, xScale, yScale);
  const legends: LegendEntry[] = [
    ...sc.legends,
    ...curves.map((c) => ({ label: c.label, color: c.color, kind: c.dash ? "dash" : "line" }) as LegendEntry),
    { label: "areal band (±π)", color: "#dce9f5", kind: "band" },
  ];

  const body = [
    axes(f, xScale, yScale, "loop radius R", "loop phase (rad)", "loop phase vs radius"),
    polygon(band, "#dce9f5", ' opacity="0.8"'),
    ...curves.map((c) =>
      polyline(
        rs.map((r, i) => [xScale.map(r), yScale.map(c.ys[i])] as [number, number]),
        c.color,
        (c.dash ? ' stroke-dasharray="5 3"' : "") + ` class="prediction" data-label="${c.label}"`,
      ),
    ),
    sc.body,
    legend(f, legends),
  ].join("\n");
  return document(f, body);
}

/** Fitted charge vs radius with the quantized values as guides. */
function renderChargeVsR(rows: ResultRow[]): string {
  const seen = new Set<string>();
  const points: Point[] = [];
  for (const r of rows) {
    if (r.q_star !== null) {
      const key = `${r.experiment_id}|${r.R}`;
      if (!seen.has(key)) {
        seen.add(key);
        points.push({ series: r.experiment_id, x: r.R, y: r.q_star });
      }
    }
    if (r.charge_q !== null) {
      points.push({ series: `${r.experiment_id} (window)`, x: r.R, y: r.charge_q });
    }
  }
  if (!points.length) throw new EmptyTableError("no rows carry a fitted or windowed charge");

  const f = frameFor();
  const a = plotArea(f);
  const xScale = linearScale(padDomain(...extent(points.map((p) => p.x))), [a.x0, a.x1]);
  const yValues = points.map((p) => p.y).concat([-1.15, 1.15]);
  const yScale = linearScale(padDomain(...extent(yValues)), [a.y1, a.y0]);

  const sc = scatter(points, xScale, yScale);
  const legends: LegendEntry[] = [...sc.legends, { label: "q* = ±1", color: "#444444", kind: "dash" }];
  const body = [
    axes(f, xScale, yScale, "loop / window radius R", "charge (units of particle charge)", "carrier charge vs radius"),
    line(a.x0, yScale.map(1), a.x1, yScale.map(1), "#444444", ' stroke-dasharray="5 3" class="prediction"'),
    line(a.x0, yScale.map(-1), a.x1, yScale.map(-1), "#444444", ' stroke-dasharray="5 3" class="prediction"'),
    line(a.x0, yScale.map(0), a.x1, yScale.map(0), "#bbbbbb"),
    sc.body,
    legend(f, legends),
  ].join("\n");
  return document(f, body);
}

/** Exchange phase vs radius against the fermionic +/- pi reference. */
function renderExchangeVsR(rows: ResultRow[]): string {
  const points: Point[] = rows
    .filter((r) => r.phi_exc !== null)
    .map((r) => ({ series: r.experiment_id, x: r.R, y: r.phi_exc as number }));
  if (!points.length) throw new EmptyTableError("no rows carry an exchange phase");

  const f = frameFor();
  const a = plotArea(f);
  const xScale = linearScale(padDomain(...extent(points.map((p) => p.x))), [a.x0, a.x1]);
  const yValues = points.map((p) => p.y).concat([-Math.PI - 0.5, Math.PI + 0.5]);
  const yScale = linearScale(padDomain(...extent(yValues)), [a.y1, a.y0]);

  const sc = scatter(points, xScale, yScale);
  const legends: LegendEntry[] = [...sc.legends, { label: "fermions: ±π", color: "#444444", kind: "dash" }];
  const body = [
    axes(f, xScale, yScale, "loop radius R", "exchange phase (rad)", "exchange phase vs radius"),
    line(a.x0, yScale.map(Math.PI), a.x1, yScale.map(Math.PI), "#444444", ' stroke-dasharray="5 3" class="prediction"'),
    line(a.x0, yScale.map(-Math.PI), a.x1, yScale.map(-Math.PI), "#444444", ' stroke-dasharray="5 3" class="prediction"'),
    line(a.x0, yScale.map(0), a.x1, yScale.map(0), "#bbbbbb"),
    sc.body,
    legend(f, legends),
  ].join("\n");
  return document(f, body);
}

const DENSITY_STOPS = ["#440154", "#3b528b", "#21918c", "#5ec962", "#fde725"];
const DIVERGING_STOPS = ["#2166ac", "#f7f7f7", "#b2182b"];

function lerpHex(c0: string, c1: string, t: number): string {
  const p = (c: string, i: number) => parseInt(c.slice(1 + 2 * i, 3 + 2 * i), 16);
  const mix = (i: number) => Math.round(p(c0, i) + (p(c1, i) - p(c0, i)) * t);
  return `#${[0, 1, 2].map((i) => mix(i).toString(16).padStart(2, "0")).join("")}`;
}

function rampColor(stops: string[], t: number): string {
  const u = Math.min(1, Math.max(0, t)) * (stops.length - 1);
  const i = Math.min(stops.length - 2, Math.floor(u));
  return lerpHex(stops[i], stops[i + 1], u - i);
}

interface Panel {
  title: string;
  grid: number[][];
  lo: number;
  hi: number;
  diverging: boolean;
}

/** Site-resolved density heatmaps straight from the run summary. */
function renderDensityMap(summary: RunSummary | null): string {
  if (!summary) {
    throw new EmptyTableError("density maps need the run summary (summary.json next to the results table)");
  }
  const panels: Panel[] = [];
  const ids = Object.keys(summary.experiments).sort();
  for (const id of ids) {
    const e = summary.experiments[id];
    const pinned = e.density_pinned;
    const reference = e.density_reference;
    if (!pinned || !reference) continue;
    const keys = Object.keys(pinned).sort((a, b) => Number(a) - Number(b));
    if (!keys.length) continue;
    const k = keys[0];
    const ref = reference[k];
    const pin = pinned[k];
    const flat = (g: number[][]) => g.flat();
    const lo = Math.min(...flat(ref), ...flat(pin));
    const hi = Math.max(...flat(ref), ...flat(pin));
    const diff = pin.map((row, y) => row.map((v, x) => v - ref[y][x]));
    const dmax = Math.max(...flat(diff).map(Math.abs));
    panels.push({ title: `${id}: no pin`, grid: ref, lo, hi, diverging: false });
    panels.push({ title: `${id}: pinned`, grid: pin, lo, hi, diverging: false });
    panels.push({ title: `${id}: difference`, grid: diff, lo: -dmax, hi: dmax, diverging: true });
  }
  if (!panels.length) {
    throw new EmptyTableError("the run summary carries no density grids (no charge-operator experiment)");
  }

  const panelSize = 180;
  const gap = 26;
  const perRow = 3;
  const nRows = Math.ceil(panels.length / perRow);
  const f: Frame = {
    width: gap + perRow * (panelSize + gap),
    height: 40 + nRows * (panelSize + 44),
    left: 0,
    right: 0,
    top: 0,
    bottom: 0,
  };
  const parts: string[] = [text(f.width / 2, 22, "particle density", ' text-anchor="middle" font-size="14"')];
  panels.forEach((p, idx) => {
    const col = idx % perRow;
    const row = Math.floor(idx / perRow);
    const ox = gap + col * (panelSize + gap);
    const oy = 40 + row * (panelSize + 44);
    const ny = p.grid.length;
    const nx = p.grid[0].length;
    const cell = panelSize / Math.max(nx, ny);
    const span = p.hi - p.lo || 1;
    for (let y = 0; y < ny; y++) {
      for (let x = 0; x < nx; x++) {
        const t = (p.grid[y][x] - p.lo) / span;
        const color_ = rampColor(p.diverging ? DIVERGING_STOPS : DENSITY_STOPS, t);
        // lattice y grows upward; SVG y grows downward
        parts.push(rect(ox + x * cell, oy + (ny - 1 - y) * cell, cell, cell, color_));
      }
    }
    parts.push(text(ox + (nx * cell) / 2, oy + ny * cell + 14, p.title, ' text-anchor="middle" font-size="11"'));
    parts.push(
      text(
        ox + (nx * cell) / 2,
        oy + ny * cell + 28,
        `[${p.lo.toFixed(3)}, ${p.hi.toFixed(3)}]`,
        ' text-anchor="middle" font-size="10" fill="#666666"',
      ),
    );
  });
  return document(f, parts.join("\n"));
}

/**
 * Render one figure kind from parsed rows plus the optional run summary.
 * Returns the SVG document as a string; rendering is pure, so equal inputs
 * give byte-identical output.
 */
export function renderPlot(kind: PlotKind, rows: ResultRow[], summary: RunSummary | null): string {
  switch (kind) {
    case "phase_vs_R":
      return renderPhaseVsR(rows, summary);
    case "charge_vs_R":
      return renderChargeVsR(rows);
    case "exchange_vs_R":
      return renderExchangeVsR(rows);
    case "density_map":
      return renderDensityMap(summary);
    default: {
      const never: never = kind;
      throw new Error(`unknown plot kind ${never}`);
    }
  }
}
