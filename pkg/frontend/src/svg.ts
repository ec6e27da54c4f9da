/**
 * Minimal deterministic SVG emitter.
 *
 * Every figure is assembled as a plain string with a fixed attribute order,
 * fixed number formatting, and a pinned inline style, so rendering the same
 * table twice yields byte-identical files on any platform.
 */

export interface Scale {
  domain: [number, number];
  range: [number, number];
  map(x: number): number;
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const k = d1 === d0 ? 0 : (r1 - r0) / (d1 - d0);
  return { domain, range, map: (x: number) => r0 + (x - d0) * k };
}

/** Extend a [min, max] pair by a fraction on both sides (never degenerate). */
export function padDomain(lo: number, hi: number, frac = 0.06): [number, number] {
  if (!(hi > lo)) {
    const c = lo;
    return [c - 1, c + 1];
  }
  const pad = (hi - lo) * frac;
  return [lo - pad, hi + pad];
}

/** Round tick positions at a 1/2/5 step, all inside the domain. */
export function ticks(domain: [number, number], count = 6): number[] {
  const [lo, hi] = domain;
  const span = hi - lo;
  if (!(span > 0)) return [lo];
  const raw = span / count;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const norm = raw / mag;
  const step = (norm >= 5 ? 10 : norm >= 2 ? 5 : norm >= 1 ? 2 : 1) * mag;
  const out: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return out;
}

/** Fixed-point coordinate formatting (SVG user units). */
export function fmt(x: number): string {
  const s = x.toFixed(4);
  return s === "-0.0000" ? "0.0000" : s;
}

/** Human-facing tick/legend label: short, deterministic. */
export function label(x: number): string {
  if (x === 0) return "0";
  const s = Math.abs(x) >= 1e4 || Math.abs(x) < 1e-3 ? x.toExponential(2) : String(Number(x.toPrecision(6)));
  return s;
}

export function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}

export const PALETTE = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#17becf",
  "#7f7f7f",
];

export interface Frame {
  width: number;
  height: number;
  left: number;
  right: number;
  top: number;
  bottom: number;
}

export const DEFAULT_FRAME: Frame = {
  width: 720,
  height: 480,
  left: 64,
  right: 168,
  top: 34,
  bottom: 48,
};

export function plotArea(f: Frame): { x0: number; x1: number; y0: number; y1: number } {
  return { x0: f.left, x1: f.width - f.right, y0: f.top, y1: f.height - f.bottom };
}

export function circle(cx: number, cy: number, r: number, fill: string, extra = ""): string {
  return `<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${fmt(r)}" fill="${fill}"${extra}/>`;
}

export function line(x1: number, y1: number, x2: number, y2: number, stroke: string, extra = ""): string {
  return `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" stroke="${stroke}"${extra}/>`;
}

export function polyline(points: Array<[number, number]>, stroke: string, extra = ""): string {
  const pts = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
  return `<polyline points="${pts}" fill="none" stroke="${stroke}"${extra}/>`;
}

export function polygon(points: Array<[number, number]>, fill: string, extra = ""): string {
  const pts = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
  return `<polygon points="${pts}" fill="${fill}" stroke="none"${extra}/>`;
}

export function rect(x: number, y: number, w: number, h: number, fill: string, extra = ""): string {
  return `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" fill="${fill}"${extra}/>`;
}

export function text(x: number, y: number, s: string, extra = ""): string {
  return `<text x="${fmt(x)}" y="${fmt(y)}"${extra}>${esc(s)}</text>`;
}

/** Axis lines, ticks and labels around the plot area. */
export function axes(
  f: Frame,
  xScale: Scale,
  yScale: Scale,
  xLabel: string,
  yLabel: string,
  title: string,
): string {
  const a = plotArea(f);
  const parts: string[] = [];
  parts.push(line(a.x0, a.y1, a.x1, a.y1, "#333333"));
  parts.push(line(a.x0, a.y0, a.x0, a.y1, "#333333"));
  for (const t of ticks(xScale.domain)) {
    const x = xScale.map(t);
    parts.push(line(x, a.y1, x, a.y1 + 5, "#333333"));
    parts.push(text(x, a.y1 + 18, label(t), ' text-anchor="middle"'));
  }
  for (const t of ticks(yScale.domain)) {
    const y = yScale.map(t);
    parts.push(line(a.x0 - 5, y, a.x0, y, "#333333"));
    parts.push(line(a.x0, y, a.x1, y, "#eeeeee"));
    parts.push(text(a.x0 - 8, y + 4, label(t), ' text-anchor="end"'));
  }
  parts.push(text((a.x0 + a.x1) / 2, f.height - 10, xLabel, ' text-anchor="middle"'));
  parts.push(
    `<text x="${fmt(16)}" y="${fmt((a.y0 + a.y1) / 2)}" text-anchor="middle" transform="rotate(-90 16 ${fmt(
      (a.y0 + a.y1) / 2,
    )})">${esc(yLabel)}</text>`,
  );
  parts.push(text((a.x0 + a.x1) / 2, 20, title, ' text-anchor="middle" font-size="14"'));
  return parts.join("\n");
}

export interface LegendEntry {
  label: string;
  color: string;
  kind: "point" | "line" | "dash" | "band";
}

export function legend(f: Frame, entries: LegendEntry[]): string {
  const a = plotArea(f);
  const x = a.x1 + 14;
  const parts: string[] = [];
  entries.forEach((e, i) => {
    const y = a.y0 + 14 + i * 18;
    if (e.kind === "point") {
      parts.push(circle(x + 7, y - 3, 3.5, e.color));
    } else if (e.kind === "band") {
      parts.push(rect(x, y - 9, 14, 10, e.color));
    } else {
      const dash = e.kind === "dash" ? ' stroke-dasharray="5 3"' : "";
      parts.push(line(x, y - 4, x + 14, y - 4, e.color, dash));
    }
    parts.push(text(x + 19, y, e.label, ' font-size="11"'));
  });
  return parts.join("\n");
}

export function document(f: Frame, body: string): string {
  return [
    '<?xml version="1.0" encoding="UTF-8"?>',
    `<svg xmlns="http://www.w3.org/2000/svg" width="${f.width}" height="${f.height}" viewBox="0 0 ${f.width} ${f.height}">`,
    "<style>text{font-family:monospace;font-size:12px;fill:#222222}</style>",
    `<rect x="0" y="0" width="${f.width}" height="${f.height}" fill="#ffffff"/>`,
    body,
    "</svg>",
    "",
  ].join("\n");
}
