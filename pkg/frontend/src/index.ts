export { parseSweepCsv, SchemaError, EmptyDataError, REQUIRED_COLUMNS, MC_COLUMNS } from "./csv.js";
export type { SweepRow } from "./csv.js";
export { PANELS, PANEL_SPECS, groupSeries } from "./panels.js";
export type { PanelId, PanelSpec, Series, SeriesPoint } from "./panels.js";
export { renderSvg, linearScale, logScale, tickLabel } from "./svg.js";
export { renderPng, encodePng, Bitmap } from "./raster.js";
export { main as cliMain, parseArgs } from "./cli.js";
