#!/usr/bin/env node
/** CLI: render a sweep CSV from the analysis tool as an SVG or PNG figure.
 *
 * Usage: cogharq-plot plot --panel fig1a --in results.csv --out fig1a.svg [--png]
 *
 * Exit codes: 0 ok, 1 empty data, 2 bad arguments or CSV schema mismatch.
 */

import { readFileSync, writeFileSync } from "node:fs";

import { EmptyDataError, SchemaError, parseSweepCsv } from "./csv.js";
import { PANELS, PANEL_SPECS, PanelId, groupSeries } from "./panels.js";
import { renderPng } from "./raster.js";
import { renderSvg } from "./svg.js";

const USAGE =
  "usage: cogharq-plot plot --panel <fig1a|fig1b|fig2a|fig2b> --in <results.csv> --out <figure.svg> [--png]";

interface Args {
  panel: PanelId;
  input: string;
  output: string;
  png: boolean;
}

export function parseArgs(argv: string[]): Args {
  if (argv[0] !== "plot") throw new Error(`unknown command: ${argv[0] ?? "(none)"}`);
  let panel: string | undefined;
  let input: string | undefined;
  let output: string | undefined;
  let png = false;
  for (let i = 1; i < argv.length; i += 1) {
    const a = argv[i];
    if (a === "--png") png = true;
    else if (a === "--panel") panel = argv[++i];
    else if (a === "--in") input = argv[++i];
    else if (a === "--out") output = argv[++i];
    else throw new Error(`unknown option: ${a}`);
  }
  if (panel === undefined || input === undefined || output === undefined)
    throw new Error("--panel, --in and --out are required");
  if (!(PANELS as readonly string[]).includes(panel))
    throw new Error(`unknown panel: ${panel}`);
  return { panel: panel as PanelId, input, output, png };
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (e) {
    process.stderr.write(`error: ${(e as Error).message}\n${USAGE}\n`);
    return 2;
  }

  let text: string;
  try {
    text = readFileSync(args.input, "utf8");
  } catch (e) {
    process.stderr.write(`error: cannot read ${args.input}: ${(e as Error).message}\n`);
    return 2;
  }

  try {
    const rows = parseSweepCsv(text);
    const spec = PANEL_SPECS[args.panel];
    const series = groupSeries(rows, spec);
    const bytes = args.png
      ? renderPng(series, spec)
      : Buffer.from(renderSvg(series, spec), "utf8");
    writeFileSync(args.output, bytes);
    return 0;
  } catch (e) {
    if (e instanceof SchemaError) {
      process.stderr.write(`error: schema mismatch, missing columns: ${e.missing.join(", ")}\n`);
      return 2;
    }
    if (e instanceof EmptyDataError) {
      process.stderr.write(`error: ${e.message}\n`);
      return 1;
    }
    throw e;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url.endsWith(process.argv[1].split("/").pop() ?? "");
if (invokedDirectly) process.exit(main(process.argv.slice(2)));
