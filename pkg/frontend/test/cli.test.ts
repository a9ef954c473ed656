import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { afterEach, describe, expect, it, vi } from "vitest";

import { main } from "../src/cli.js";

const here = dirname(fileURLToPath(import.meta.url));
const fixture = (name: string) => join(here, "fixtures", name);
const scratch = () => mkdtempSync(join(tmpdir(), "cogharq-plot-"));

afterEach(() => vi.restoreAllMocks());

function quietStderr(): string[] {
  const lines: string[] = [];
  vi.spyOn(process.stderr, "write").mockImplementation((s) => {
    lines.push(String(s));
    return true;
  });
  return lines;
}

describe("plot command", () => {
  it("renders every preset fixture to SVG with exit 0", () => {
    const dir = scratch();
    for (const panel of ["fig1a", "fig1b", "fig2a", "fig2b"]) {
      const out = join(dir, `${panel}.svg`);
      const rc = main(["plot", "--panel", panel, "--in", fixture(`${panel}.csv`), "--out", out]);
      expect(rc).toBe(0);
      expect(readFileSync(out, "utf8")).toContain("</svg>");
    }
  });

  it("writes identical bytes across repeated runs", () => {
    const dir = scratch();
    const a = join(dir, "a.svg");
    const b = join(dir, "b.svg");
    main(["plot", "--panel", "fig1a", "--in", fixture("fig1a_mc.csv"), "--out", a]);
    main(["plot", "--panel", "fig1a", "--in", fixture("fig1a_mc.csv"), "--out", b]);
    expect(readFileSync(a)).toEqual(readFileSync(b));
  });

  it("emits PNG with --png", () => {
    const dir = scratch();
    const out = join(dir, "fig.png");
    const rc = main(["plot", "--png", "--panel", "fig1b", "--in", fixture("fig1b.csv"), "--out", out]);
    expect(rc).toBe(0);
    expect(readFileSync(out).subarray(1, 4).toString("ascii")).toBe("PNG");
  });

  it("exits 2 and lists missing columns on schema mismatch", () => {
    const dir = scratch();
    const bad = join(dir, "bad.csv");
    writeFileSync(bad, "axis_value,protocol\n1,rtd\n");
    const lines = quietStderr();
    const rc = main(["plot", "--panel", "fig1a", "--in", bad, "--out", join(dir, "x.svg")]);
    expect(rc).toBe(2);
    expect(lines.join("")).toContain("traffic_model");
    expect(lines.join("")).toContain("outage_analytic");
  });

  it("exits 1 on empty data", () => {
    const dir = scratch();
    const empty = join(dir, "empty.csv");
    writeFileSync(
      empty,
      "axis_value,protocol,traffic_model,M,throughput_analytic,outage_analytic\n",
    );
    quietStderr();
    const rc = main(["plot", "--panel", "fig1a", "--in", empty, "--out", join(dir, "x.svg")]);
    expect(rc).toBe(1);
  });

  it("exits 2 on unknown panel or missing file", () => {
    quietStderr();
    expect(main(["plot", "--panel", "fig9", "--in", "x", "--out", "y"])).toBe(2);
    expect(
      main(["plot", "--panel", "fig1a", "--in", "/nonexistent.csv", "--out", "y"]),
    ).toBe(2);
  });
});
