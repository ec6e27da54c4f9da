import * as fs from "fs";
import * as path from "path";
import { describe, expect, it } from "vitest";

import { CSV_COLUMNS, EmptyTableError, SchemaError, parseResults, parseSummary, summaryAlpha } from "../src/schema";

const FIXTURES = path.join(__dirname, "fixtures");

function fixture(name: string): string {
  return fs.readFileSync(path.join(FIXTURES, name), "utf8");
}

describe("parseResults", () => {
  it("reads a benchmark table with typed cells", () => {
    const rows = parseResults(fixture("benchmark_results.csv"));
    expect(rows.length).toBeGreaterThan(50);
    const first = rows[0];
    expect(first.kind).toBe("single_loop_ab");
    expect(typeof first.R).toBe("number");
    expect(typeof first.delta_phi).toBe("number");
    expect(first.reliable).toBe(true);
    expect(first.phi_exc).toBeNull();
    expect(first.charge_q).toBeNull();
  });

  it("reads charge-operator rows where only the windowed charge is set", () => {
    const rows = parseResults(fixture("charge_results.csv"));
    const charge = rows.filter((r) => r.kind === "charge_operator");
    expect(charge.length).toBeGreaterThan(0);
    for (const r of charge) {
      expect(r.charge_q).not.toBeNull();
      expect(r.phi_mod).toBeNull();
      expect(r.reliable).toBeNull();
    }
  });

  it("rejects reordered columns and prints both headers", () => {
    const rows = fixture("benchmark_results.csv").split("\n");
    const header = CSV_COLUMNS.slice();
    [header[0], header[1]] = [header[1], header[0]];
    const text = [header.join(","), ...rows.slice(1)].join("\n");
    expect(() => parseResults(text)).toThrowError(SchemaError);
    try {
      parseResults(text);
    } catch (err) {
      const msg = (err as Error).message;
      expect(msg).toContain("same columns, different order");
      expect(msg).toContain(`expected: ${CSV_COLUMNS.join(",")}`);
      expect(msg).toContain("found:");
    }
  });

  it("rejects a missing column, naming it", () => {
    const text = "experiment_id,kind,R\nab,single_loop_ab,1\n";
    try {
      parseResults(text);
      expect.unreachable("should have thrown");
    } catch (err) {
      expect(err).toBeInstanceOf(SchemaError);
      expect((err as Error).message).toContain("missing: delta_phi");
      expect((err as Error).message).toContain("charge_q");
    }
  });

  it("rejects an extra column, naming it", () => {
    const header = [...CSV_COLUMNS, "bonus"].join(",");
    const row = "ab,single_loop_ab,1,0,0,0,0.9,1,,,,42";
    try {
      parseResults(`${header}\n${row}\n`);
      expect.unreachable("should have thrown");
    } catch (err) {
      expect(err).toBeInstanceOf(SchemaError);
      expect((err as Error).message).toContain("unexpected: bonus");
    }
  });

  it("rejects a header-only table as empty", () => {
    expect(() => parseResults(CSV_COLUMNS.join(",") + "\n")).toThrowError(EmptyTableError);
  });

  it("rejects non-numeric required cells", () => {
    const row = "ab,single_loop_ab,not_a_number,0,0,0,0.9,1,,,";
    expect(() => parseResults(CSV_COLUMNS.join(",") + "\n" + row)).toThrowError(SchemaError);
  });
});

describe("parseSummary", () => {
  it("exposes the lattice echo for overlay curves", () => {
    const summary = parseSummary(fixture("insulator_summary.json"));
    expect(summary.preset).toBe("fig5");
    expect(summaryAlpha(summary)).toBeCloseTo(0.2, 12);
  });

  it("reports alpha 0 for the flux-defect benchmark", () => {
    const summary = parseSummary(fixture("benchmark_summary.json"));
    expect(summaryAlpha(summary)).toBe(0);
  });

  it("returns null alpha when the echo is absent", () => {
    expect(summaryAlpha(parseSummary('{"experiments": {}}'))).toBeNull();
    expect(summaryAlpha(null)).toBeNull();
  });
});
