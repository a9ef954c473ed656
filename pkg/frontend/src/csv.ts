/** Parsing and validation of sweep CSVs produced by the cogharq CLI. */

export const REQUIRED_COLUMNS = [
  "axis_value",
  "protocol",
  "traffic_model",
  "M",
  "throughput_analytic",
  "outage_analytic",
] as const;

/** Simulation columns; optional so analytic-only CSVs still render. */
export const MC_COLUMNS = [
  "throughput_mc",
  "throughput_mc_se",
  "outage_mc",
  "outage_mc_se",
  "interference_violation_mc",
] as const;

export interface SweepRow {
  axis_value: number;
  protocol: string;
  traffic_model: string;
  M: number;
  throughput_analytic: number;
  outage_analytic: number;
  throughput_mc: number | null;
  throughput_mc_se: number | null;
  outage_mc: number | null;
  outage_mc_se: number | null;
  /** Trailing context columns (p_max, i_p, pi, p_p, ...) kept as strings. */
  extras: Record<string, string>;
}

export class SchemaError extends Error {
  constructor(public readonly missing: string[]) {
    super(`missing required columns: ${missing.join(", ")}`);
  }
}

export class EmptyDataError extends Error {
  constructor(msg = "no plottable rows in input") {
    super(msg);
  }
}

function parseNumber(raw: string | undefined): number | null {
  if (raw === undefined || raw === "") return null;
  if (raw === "inf") return Infinity;
  const v = Number(raw);
  return Number.isNaN(v) ? null : v;
}

/**
 * Parse CSV text into rows. Lines starting with '#' are comments. Rows whose
 * status column is present and not "ok" are dropped (failed grid points).
 */
export function parseSweepCsv(text: string): SweepRow[] {
  const lines = text
    .split(/\r?\n/)
    .filter((l) => l.length > 0 && !l.startsWith("#"));
  if (lines.length === 0) throw new EmptyDataError("input has no header");

  const header = lines[0].split(",");
  const missing = REQUIRED_COLUMNS.filter((c) => !header.includes(c));
  if (missing.length > 0) throw new SchemaError(missing);

  const idx = new Map(header.map((name, i) => [name, i] as const));
  const known = new Set<string>([...REQUIRED_COLUMNS, ...MC_COLUMNS, "status"]);
  const extraNames = header.filter((c) => !known.has(c));

  const get = (cells: string[], name: string): string | undefined => {
    const i = idx.get(name);
    return i === undefined ? undefined : cells[i];
  };

  const rows: SweepRow[] = [];
  for (const line of lines.slice(1)) {
    const cells = line.split(",");
    const status = get(cells, "status");
    if (status !== undefined && status !== "" && status !== "ok") continue;

    const axis = parseNumber(get(cells, "axis_value"));
    const thr = parseNumber(get(cells, "throughput_analytic"));
    const out = parseNumber(get(cells, "outage_analytic"));
    const m = parseNumber(get(cells, "M"));
    if (axis === null || thr === null || out === null || m === null) continue;

    const extras: Record<string, string> = {};
    for (const name of extraNames) extras[name] = get(cells, name) ?? "";
    rows.push({
      axis_value: axis,
      protocol: get(cells, "protocol") ?? "",
      traffic_model: get(cells, "traffic_model") ?? "",
      M: m,
      throughput_analytic: thr,
      outage_analytic: out,
      throughput_mc: parseNumber(get(cells, "throughput_mc")),
      throughput_mc_se: parseNumber(get(cells, "throughput_mc_se")),
      outage_mc: parseNumber(get(cells, "outage_mc")),
      outage_mc_se: parseNumber(get(cells, "outage_mc_se")),
      extras,
    });
  }
  if (rows.length === 0) throw new EmptyDataError();
  return rows;
}
