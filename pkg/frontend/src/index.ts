export {
  CSV_COLUMNS,
  EmptyTableError,
  ExperimentSummary,
  ResultRow,
  RunSummary,
  SchemaError,
  parseResults,
  parseSummary,
  summaryAlpha,
} from "./schema";
export { arealPhase, curveRadii, partialCapturePhase } from "./predictions";
export { PLOT_KINDS, PlotKind, renderPlot } from "./render";
export { main, renderFile } from "./cli";
