#!/usr/bin/env node
/**
 * Command line entry point.
 *
 *   hofphase-plots render <results.csv> --kind phase_vs_R --out phase.svg
 *
 * The summary.json written by the same run is picked up automatically when
 * it sits next to the results table (same directory, matching name); it
 * supplies the background flux for overlay curves and the density grids.
 * On any error the process exits nonzero and no output file is written.
 */

import * as fs from "fs";
import * as path from "path";
import yargs from "yargs";

import { parseResults, parseSummary, RunSummary } from "./schema";
import { PLOT_KINDS, PlotKind, renderPlot } from "./render";

function siblingSummaryPath(csvPath: string): string | null {
  const base = path.basename(csvPath);
  const candidates = [
    base.endsWith("results.csv") ? base.slice(0, -"results.csv".length) + "summary.json" : null,
    "summary.json",
  ];
  for (const name of candidates) {
    if (!name) continue;
    const p = path.join(path.dirname(csvPath), name);
    if (fs.existsSync(p)) return p;
  }
  return null;
}

export function renderFile(csvPath: string, kind: PlotKind, outPath: string): void {
  const rows = parseResults(fs.readFileSync(csvPath, "utf8"));
  let summary: RunSummary | null = null;
  const summaryPath = siblingSummaryPath(csvPath);
  if (summaryPath) {
    summary = parseSummary(fs.readFileSync(summaryPath, "utf8"));
  }
  const svg = renderPlot(kind, rows, summary);
  fs.writeFileSync(outPath, svg, "utf8");
}

export function main(argv: string[]): number {
  const parser = yargs(argv)
    .scriptName("hofphase-plots")
    .command("render <csv>", "render one figure from a results table", (y) =>
      y
        .positional("csv", { type: "string", demandOption: true, describe: "path to results.csv" })
        .option("kind", {
          type: "string",
          choices: PLOT_KINDS,
          demandOption: true,
          describe: "which figure to draw",
        })
        .option("out", { type: "string", demandOption: true, describe: "output SVG path" }),
    )
    .demandCommand(1)
    .strict()
    .exitProcess(false)
    .fail((msg, err) => {
      throw err ?? new Error(msg);
    });

  let args: { csv?: string; kind?: string; out?: string };
  try {
    args = parser.parseSync() as typeof args;
    renderFile(args.csv as string, args.kind as PlotKind, args.out as string);
  } catch (err) {
    process.stderr.write(`error: ${err instanceof Error ? err.message : String(err)}\n`);
    return 1;
  }
  process.stderr.write(`wrote ${args.out}\n`);
  return 0;
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
