/** Deterministic SVG rendering of grouped sweep series. */

import { PanelSpec, Series } from "./panels.js";

export const WIDTH = 720;
export const HEIGHT = 480;
const MARGIN = { top: 28, right: 20, bottom: 52, left: 68 };

const COLORS = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#17becf",
  "#7f7f7f",
  "#bcbd22",
  "#e377c2",
];
const DASHES = ["", "6 3", "2 2", "8 3 2 3"];

export interface Scale {
  (v: number): number;
  ticks: number[];
  domain: [number, number];
}

/** Fixed 2-decimal coordinate formatting keeps output byte-stable. */
function px(v: number): string {
  return v.toFixed(2);
}

export function tickLabel(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) return v.toExponential(0).replace("+", "");
  return String(Number(v.toPrecision(6)));
}

export function linearScale(lo: number, hi: number, r0: number, r1: number): Scale {
  if (hi <= lo) hi = lo + 1;
  const span = hi - lo;
  // round tick step to 1/2/5 decades
  const raw = span / 5;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => span / s <= 6) ?? 10 * mag;
  const t0 = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let t = t0; t <= hi + 1e-9 * span; t += step) ticks.push(Number(t.toPrecision(12)));
  const f = ((v: number) => r0 + ((v - lo) / span) * (r1 - r0)) as Scale;
  f.ticks = ticks;
  f.domain = [lo, hi];
  return f;
}

export function logScale(lo: number, hi: number, r0: number, r1: number): Scale {
  if (lo <= 0) lo = 1e-12;
  if (hi <= lo) hi = lo * 10;
  const llo = Math.log10(lo);
  const lhi = Math.log10(hi);
  const ticks: number[] = [];
  for (let d = Math.ceil(llo - 1e-9); d <= Math.floor(lhi + 1e-9); d += 1)
    ticks.push(Math.pow(10, d));
  const f = ((v: number) =>
    r0 + ((Math.log10(Math.max(v, lo)) - llo) / (lhi - llo)) * (r1 - r0)) as Scale;
  f.ticks = ticks;
  f.domain = [lo, hi];
  return f;
}

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

/** Render a full panel to an SVG document string. */
export function renderSvg(series: Series[], spec: PanelSpec): string {
  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y0 = HEIGHT - MARGIN.bottom;
  const y1 = MARGIN.top;

  const xs = series.flatMap((s) => s.points.map((p) => p.x));
  const ysAll: number[] = [];
  for (const s of series)
    for (const p of s.points) {
      if (!spec.logY || p.y > 0) ysAll.push(p.y);
      if (p.yMc !== null && (!spec.logY || p.yMc > 0)) ysAll.push(p.yMc);
    }
  const xlo = Math.min(...xs);
  const xhi = Math.max(...xs);
  let ylo = Math.min(...ysAll);
  let yhi = Math.max(...ysAll);
  if (!spec.logY) {
    ylo = Math.min(0, ylo);
    yhi = yhi + 0.05 * (yhi - ylo || 1);
  } else {
    ylo = Math.pow(10, Math.floor(Math.log10(ylo)));
    yhi = Math.pow(10, Math.ceil(Math.log10(yhi)));
  }

  const sx = linearScale(xlo, xhi, x0, x1);
  const sy = spec.logY ? logScale(ylo, yhi, y0, y1) : linearScale(ylo, yhi, y0, y1);

  const out: string[] = [];
  out.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif">`,
  );
  out.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>`);

  // grid + ticks
  for (const t of sx.ticks) {
    const X = px(sx(t));
    out.push(`<line x1="${X}" y1="${px(y0)}" x2="${X}" y2="${px(y1)}" stroke="#e0e0e0"/>`);
    out.push(
      `<text x="${X}" y="${px(y0 + 18)}" font-size="11" text-anchor="middle" fill="#333">${tickLabel(t)}</text>`,
    );
  }
  for (const t of sy.ticks) {
    const Y = px(sy(t));
    out.push(`<line x1="${px(x0)}" y1="${Y}" x2="${px(x1)}" y2="${Y}" stroke="#e0e0e0"/>`);
    out.push(
      `<text x="${px(x0 - 6)}" y="${Y}" dy="4" font-size="11" text-anchor="end" fill="#333">${tickLabel(t)}</text>`,
    );
  }
  out.push(
    `<rect x="${px(x0)}" y="${px(y1)}" width="${px(x1 - x0)}" height="${px(y0 - y1)}" fill="none" stroke="#333"/>`,
  );
  out.push(
    `<text x="${px((x0 + x1) / 2)}" y="${px(HEIGHT - 14)}" font-size="13" text-anchor="middle" fill="#000">${esc(spec.xLabel)}</text>`,
  );
  out.push(
    `<text x="16" y="${px((y0 + y1) / 2)}" font-size="13" text-anchor="middle" fill="#000" transform="rotate(-90 16 ${px((y0 + y1) / 2)})">${esc(spec.yLabel)}</text>`,
  );

  // curves, then MC markers on top
  series.forEach((s, i) => {
    const color = COLORS[i % COLORS.length];
    const dash = DASHES[Math.floor(i / COLORS.length) % DASHES.length];
    const pts = s.points.filter((p) => !spec.logY || p.y > 0);
    const d = pts
      .map((p, j) => `${j === 0 ? "M" : "L"}${px(sx(p.x))} ${px(sy(p.y))}`)
      .join("");
    const dashAttr = dash === "" ? "" : ` stroke-dasharray="${dash}"`;
    out.push(`<path d="${d}" fill="none" stroke="${color}" stroke-width="1.6"${dashAttr}/>`);
    for (const p of s.points) {
      if (p.yMc === null || (spec.logY && p.yMc <= 0)) continue;
      const X = px(sx(p.x));
      const Y = px(sy(p.yMc));
      if (p.yMcSe !== null && p.yMcSe > 0) {
        const lo = p.yMc - 2 * p.yMcSe;
        const hi = p.yMc + 2 * p.yMcSe;
        const Ylo = px(sy(spec.logY ? Math.max(lo, sy.domain[0]) : lo));
        const Yhi = px(sy(spec.logY ? Math.max(hi, sy.domain[0]) : hi));
        out.push(`<line x1="${X}" y1="${Ylo}" x2="${X}" y2="${Yhi}" stroke="${color}" stroke-width="1"/>`);
      }
      out.push(`<circle cx="${X}" cy="${Y}" r="2.5" fill="${color}"/>`);
    }
  });

  // legend
  series.forEach((s, i) => {
    const color = COLORS[i % COLORS.length];
    const lx = x1 - 190;
    const ly = y1 + 14 + i * 15;
    out.push(`<line x1="${px(lx)}" y1="${px(ly - 4)}" x2="${px(lx + 22)}" y2="${px(ly - 4)}" stroke="${color}" stroke-width="1.6"/>`);
    out.push(`<text x="${px(lx + 28)}" y="${px(ly)}" font-size="11" fill="#000">${esc(s.label)}</text>`);
  });

  out.push(`<text x="${px(x0)}" y="16" font-size="12" fill="#000">${esc(spec.id)}</text>`);
  out.push("</svg>");
  return out.join("\n") + "\n";
}
