import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import {
  EmptyDataError,
  MC_COLUMNS,
  PANELS,
  PANEL_SPECS,
  SchemaError,
  encodePng,
  Bitmap,
  groupSeries,
  logScale,
  tickLabel,
  parseSweepCsv,
  renderPng,
  renderSvg,
} from "../src/index.js";

const here = dirname(fileURLToPath(import.meta.url));
const fixture = (name: string) => readFileSync(join(here, "fixtures", name), "utf8");

describe("csv parsing", () => {
  it("parses a preset sweep and keeps only ok rows", () => {
    const rows = parseSweepCsv(fixture("fig1a.csv"));
    expect(rows.length).toBe(300);
    expect(rows[0].protocol).toBe("rtd");
    expect(rows[0].throughput_mc).toBeNull();
  });

  it("fills MC fields when present", () => {
    const rows = parseSweepCsv(fixture("fig1a_mc.csv"));
    expect(rows.every((r) => r.throughput_mc !== null)).toBe(true);
    expect(rows.every((r) => (r.throughput_mc_se ?? 0) > 0)).toBe(true);
  });

  it("reports missing required columns with their names", () => {
    const bad = "axis_value,protocol,M\n1,rtd,0\n";
    try {
      parseSweepCsv(bad);
      expect.unreachable();
    } catch (e) {
      expect(e).toBeInstanceOf(SchemaError);
      expect((e as SchemaError).missing).toEqual([
        "traffic_model",
        "throughput_analytic",
        "outage_analytic",
      ]);
    }
  });

  it("rejects header-only input as empty", () => {
    const header =
      "axis_value,protocol,traffic_model,M,throughput_analytic,outage_analytic\n";
    expect(() => parseSweepCsv(header)).toThrow(EmptyDataError);
  });

  it("drops rows flagged by the sweep", () => {
    const text =
      "axis_value,protocol,traffic_model,M,throughput_analytic,outage_analytic,status\n" +
      "1,rtd,continuous,0,0.2,0.5,ok\n" +
      "2,rtd,continuous,0,0.3,0.4,error:x\n";
    expect(parseSweepCsv(text).length).toBe(1);
  });
});

describe("series grouping", () => {
  it("fig1a groups by protocol, traffic model and M", () => {
    const rows = parseSweepCsv(fixture("fig1a.csv"));
    const series = groupSeries(rows, PANEL_SPECS.fig1a);
    expect(series.length).toBe(12);
    expect(series.every((s) => s.points.length === 25)).toBe(true);
  });

  it("fig1b collapses traffic models (outage is shared)", () => {
    const rows = parseSweepCsv(fixture("fig1b.csv"));
    const series = groupSeries(rows, PANEL_SPECS.fig1b);
    expect(series.length).toBe(6);
  });

  it("fig2b groups by protocol and peak power, not the axis echo", () => {
    const rows = parseSweepCsv(fixture("fig2b.csv"));
    const series = groupSeries(rows, PANEL_SPECS.fig2b);
    expect(series.length).toBe(6);
    expect(series.some((s) => s.label.includes("p_max=inf"))).toBe(true);
  });

  it("points come out sorted by axis value", () => {
    const rows = parseSweepCsv(fixture("fig2a.csv"));
    for (const s of groupSeries(rows, PANEL_SPECS.fig2a)) {
      const xs = s.points.map((p) => p.x);
      expect([...xs].sort((a, b) => a - b)).toEqual(xs);
    }
  });
});

describe("svg rendering", () => {
  it("renders all four preset CSVs without error", () => {
    for (const panel of PANELS) {
      const rows = parseSweepCsv(fixture(`${panel}.csv`));
      const svg = renderSvg(groupSeries(rows, PANEL_SPECS[panel]), PANEL_SPECS[panel]);
      expect(svg.startsWith("<svg")).toBe(true);
      expect(svg.trimEnd().endsWith("</svg>")).toBe(true);
      expect(svg).toContain(PANEL_SPECS[panel].xLabel);
      expect(svg).toContain(PANEL_SPECS[panel].yLabel);
    }
  });

  it("is byte-deterministic for fixed input", () => {
    const rows = parseSweepCsv(fixture("fig1a_mc.csv"));
    const once = renderSvg(groupSeries(rows, PANEL_SPECS.fig1a), PANEL_SPECS.fig1a);
    const twice = renderSvg(
      groupSeries(parseSweepCsv(fixture("fig1a_mc.csv")), PANEL_SPECS.fig1a),
      PANEL_SPECS.fig1a,
    );
    expect(once).toBe(twice);
  });

  it("degraded analytic-only mode renders no markers or error bars", () => {
    const rows = parseSweepCsv(fixture("fig1a.csv"));
    const svg = renderSvg(groupSeries(rows, PANEL_SPECS.fig1a), PANEL_SPECS.fig1a);
    expect(svg).not.toContain("<circle");
  });

  it("MC mode overlays markers with error bars", () => {
    const rows = parseSweepCsv(fixture("fig1a_mc.csv"));
    const svg = renderSvg(groupSeries(rows, PANEL_SPECS.fig1a), PANEL_SPECS.fig1a);
    expect(svg).toContain("<circle");
  });

  it("fig1b uses decade ticks on a log y axis", () => {
    const rows = parseSweepCsv(fixture("fig1b.csv"));
    const svg = renderSvg(groupSeries(rows, PANEL_SPECS.fig1b), PANEL_SPECS.fig1b);
    expect(svg).toContain(">0.1<");
    const s = logScale(1e-3, 1, 0, 100);
    expect(s.ticks).toEqual([1e-3, 1e-2, 1e-1, 1]);
    expect(tickLabel(1e-4)).toBe("1e-4");
  });
});

describe("png encoding", () => {
  it("produces a valid signature and is deterministic", () => {
    const rows = parseSweepCsv(fixture("fig1a_mc.csv"));
    const series = groupSeries(rows, PANEL_SPECS.fig1a);
    const a = renderPng(series, PANEL_SPECS.fig1a);
    const b = renderPng(series, PANEL_SPECS.fig1a);
    expect(a.subarray(0, 8)).toEqual(
      Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]),
    );
    expect(a.equals(b)).toBe(true);
  });

  it("encodes bitmap dimensions into IHDR", () => {
    const png = encodePng(new Bitmap(3, 2));
    // IHDR body starts at offset 16
    expect(png.readUInt32BE(16)).toBe(3);
    expect(png.readUInt32BE(20)).toBe(2);
  });
});
