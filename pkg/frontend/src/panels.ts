/** Panel definitions and grouping of CSV rows into plottable series. */

import { SweepRow } from "./csv.js";

export const PANELS = ["fig1a", "fig1b", "fig2a", "fig2b"] as const;
export type PanelId = (typeof PANELS)[number];

export interface PanelSpec {
  id: PanelId;
  xLabel: string;
  yLabel: string;
  yField: "throughput" | "outage";
  logY: boolean;
}

export const PANEL_SPECS: Record<PanelId, PanelSpec> = {
  fig1a: {
    id: "fig1a",
    xLabel: "interference cap i_p",
    yLabel: "throughput (npcu)",
    yField: "throughput",
    logY: false,
  },
  fig1b: {
    id: "fig1b",
    xLabel: "interference cap i_p",
    yLabel: "outage probability",
    yField: "outage",
    logY: true,
  },
  fig2a: {
    id: "fig2a",
    xLabel: "confidence level pi",
    yLabel: "throughput (npcu)",
    yField: "throughput",
    logY: false,
  },
  fig2b: {
    id: "fig2b",
    xLabel: "primary transmit power p_p",
    yLabel: "throughput (npcu)",
    yField: "throughput",
    logY: false,
  },
};

export interface SeriesPoint {
  x: number;
  y: number;
  yMc: number | null;
  yMcSe: number | null;
}

export interface Series {
  label: string;
  points: SeriesPoint[];
}

function yOf(row: SweepRow, field: "throughput" | "outage") {
  return field === "throughput"
    ? { y: row.throughput_analytic, yMc: row.throughput_mc, yMcSe: row.throughput_mc_se }
    : { y: row.outage_analytic, yMc: row.outage_mc, yMcSe: row.outage_mc_se };
}

/**
 * Group rows into series keyed by (protocol, traffic_model, M) plus any
 * trailing context column that varies across rows (p_max, i_p, ...), except
 * the sweep axis itself. Labels only mention the parts that distinguish
 * series within this file.
 */
export function groupSeries(rows: SweepRow[], spec: PanelSpec): Series[] {
  // outage is traffic-model independent; keep a single copy per curve
  let input = rows;
  if (spec.yField === "outage") {
    const first = rows[0].traffic_model;
    const filtered = rows.filter((r) => r.traffic_model === first);
    if (filtered.length > 0) input = filtered;
  }

  const varying = (name: keyof SweepRow | string, value: (r: SweepRow) => string) =>
    new Set(input.map(value)).size > 1;

  const parts: Array<(r: SweepRow) => string> = [];
  if (varying("protocol", (r) => r.protocol)) parts.push((r) => r.protocol);
  if (spec.yField !== "outage" && varying("traffic_model", (r) => r.traffic_model))
    parts.push((r) => r.traffic_model);
  if (varying("M", (r) => String(r.M))) parts.push((r) => `M=${r.M}`);
  // a trailing column that mirrors the sweep axis is not a grouping key
  const extraNames = Object.keys(input[0].extras).filter(
    (name) => !input.every((r) => Number(r.extras[name]) === r.axis_value),
  );
  for (const name of extraNames) {
    if (varying(name, (r) => r.extras[name] ?? ""))
      parts.push((r) => `${name}=${r.extras[name]}`);
  }
  const labelOf = (r: SweepRow) =>
    parts.length > 0 ? parts.map((p) => p(r)).join(" ") : "series";

  const byLabel = new Map<string, SeriesPoint[]>();
  for (const row of input) {
    const label = labelOf(row);
    let pts = byLabel.get(label);
    if (pts === undefined) {
      pts = [];
      byLabel.set(label, pts);
    }
    pts.push({ x: row.axis_value, ...yOf(row, spec.yField) });
  }

  const series: Series[] = [];
  for (const [label, points] of byLabel) {
    points.sort((a, b) => a.x - b.x);
    series.push({ label, points });
  }
  series.sort((a, b) => (a.label < b.label ? -1 : a.label > b.label ? 1 : 0));
  return series;
}
