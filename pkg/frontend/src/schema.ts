/**
 * Strict reader for the result tables produced by the hofphase pipeline.
 *
 * The table contract is positional: a results.csv must carry exactly the
 * columns below, in this order.  Anything else is treated as a different
 * file format and rejected with a diff rather than silently reinterpreted.
 */

import Papa from "papaparse";

export const CSV_COLUMNS = [
  "experiment_id",
  "kind",
  "R",
  "delta_phi",
  "phi_unwrapped",
  "phi_mod",
  "min_mag",
  "reliable",
  "q_star",
  "phi_exc",
  "charge_q",
] as const;

export interface ResultRow {
  experiment_id: string;
  kind: string;
  R: number;
  delta_phi: number;
  phi_unwrapped: number | null;
  phi_mod: number | null;
  min_mag: number | null;
  reliable: boolean | null;
  q_star: number | null;
  phi_exc: number | null;
  charge_q: number | null;
}

/** Lattice/pin echo and per-experiment fit payloads from summary.json. */
export interface ExperimentSummary {
  kind: string;
  N: number | null;
  n_steps: number | null;
  band_projected: boolean;
  lattice: { Lx: number; Ly: number; alpha: number } | null;
  pin: { strength: number; width: number } | null;
  delta_phi: number[] | null;
  fits: Record<string, unknown>;
  density_pinned?: Record<string, number[][]>;
  density_reference?: Record<string, number[][]>;
  charges?: Record<string, Record<string, number>>;
}

export interface RunSummary {
  preset: string | null;
  experiments: Record<string, ExperimentSummary>;
}

export class SchemaError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SchemaError";
  }
}

export class EmptyTableError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "EmptyTableError";
  }
}

function columnDiff(found: string[]): string {
  const expected = CSV_COLUMNS as readonly string[];
  const lines: string[] = [];
  const missing = expected.filter((c) => !found.includes(c));
  const unexpected = found.filter((c) => !expected.includes(c));
  if (missing.length) lines.push(`missing: ${missing.join(", ")}`);
  if (unexpected.length) lines.push(`unexpected: ${unexpected.join(", ")}`);
  if (!missing.length && !unexpected.length) {
    lines.push("same columns, different order");
  }
  lines.push(`expected: ${expected.join(",")}`);
  lines.push(`found:    ${found.join(",")}`);
  return lines.join("\n");
}

function toNumber(cell: string, column: string, line: number): number {
  const x = Number(cell);
  if (cell.trim() === "" || !Number.isFinite(x)) {
    throw new SchemaError(`row ${line}: ${column}=${JSON.stringify(cell)} is not a number`);
  }
  return x;
}

function toOptionalNumber(cell: string): number | null {
  return cell.trim() === "" ? null : Number(cell);
}

/**
 * Parse a results.csv payload into typed rows.
 *
 * Throws SchemaError when the header is not exactly CSV_COLUMNS (the message
 * contains a column diff) and EmptyTableError when the table has a valid
 * header but zero data rows.
 */
export function parseResults(csvText: string): ResultRow[] {
  const parsed = Papa.parse<string[]>(csvText.trim(), { skipEmptyLines: true });
  if (parsed.errors.length) {
    throw new SchemaError(`CSV parse failed: ${parsed.errors[0].message}`);
  }
  const grid = parsed.data;
  if (!grid.length) {
    throw new EmptyTableError("no header row found");
  }
  const header = grid[0];
  const same =
    header.length === CSV_COLUMNS.length &&
    header.every((c, i) => c === CSV_COLUMNS[i]);
  if (!same) {
    throw new SchemaError(`unexpected columns\n${columnDiff(header)}`);
  }
  if (grid.length === 1) {
    throw new EmptyTableError("table has a header but no data rows");
  }
  return grid.slice(1).map((cells, i) => {
    const line = i + 2;
    if (cells.length !== CSV_COLUMNS.length) {
      throw new SchemaError(
        `row ${line}: expected ${CSV_COLUMNS.length} cells, found ${cells.length}`,
      );
    }
    const reliable = cells[7].trim();
    return {
      experiment_id: cells[0],
      kind: cells[1],
      R: toNumber(cells[2], "R", line),
      delta_phi: toNumber(cells[3], "delta_phi", line),
      phi_unwrapped: toOptionalNumber(cells[4]),
      phi_mod: toOptionalNumber(cells[5]),
      min_mag: toOptionalNumber(cells[6]),
      reliable: reliable === "" ? null : reliable !== "0",
      q_star: toOptionalNumber(cells[8]),
      phi_exc: toOptionalNumber(cells[9]),
      charge_q: toOptionalNumber(cells[10]),
    };
  });
}

/** Parse a summary.json payload, tolerating absent optional blocks. */
export function parseSummary(jsonText: string): RunSummary {
  const raw = JSON.parse(jsonText) as Record<string, unknown>;
  const experiments = (raw.experiments ?? {}) as Record<string, ExperimentSummary>;
  return {
    preset: (raw.preset as string | null) ?? null,
    experiments,
  };
}

/**
 * Background flux of the run, read from the first experiment that echoes its
 * lattice.  Returns null when no experiment carries the echo (older tables),
 * in which case callers fall back to alpha = 0.
 */
export function summaryAlpha(summary: RunSummary | null): number | null {
  if (!summary) return null;
  for (const id of Object.keys(summary.experiments).sort()) {
    const lattice = summary.experiments[id].lattice;
    if (lattice && typeof lattice.alpha === "number") return lattice.alpha;
  }
  return null;
}
