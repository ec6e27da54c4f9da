import * as crypto from "crypto";
import * as fs from "fs";
import * as path from "path";
import { describe, expect, it } from "vitest";

import { parseResults, parseSummary } from "../src/schema";
import { renderPlot } from "../src/render";

const FIXTURES = path.join(__dirname, "fixtures");

function loadRows(name: string) {
  return parseResults(fs.readFileSync(path.join(FIXTURES, name), "utf8"));
}

function loadSummary(name: string) {
  return parseSummary(fs.readFileSync(path.join(FIXTURES, name), "utf8"));
}

function count(haystack: string, needle: string): number {
  return haystack.split(needle).length - 1;
}

describe("phase_vs_R", () => {
  it("draws every measured phase plus four prediction curves and a band", () => {
    const rows = loadRows("benchmark_results.csv");
    const svg = renderPlot("phase_vs_R", rows, loadSummary("benchmark_summary.json"));
    expect(svg).toContain("<svg");
    expect(count(svg, 'class="datapoint"')).toBe(rows.length);
    expect(count(svg, 'class="prediction"')).toBe(4);
    expect(svg).toContain('data-label="defect capture q*=+1"');
    expect(svg).toContain('data-label="defect capture q*=-1"');
    expect(svg).toContain('data-label="areal law q*=+1"');
    expect(svg).toContain('data-label="areal law q*=-1"');
    expect(count(svg, "<polygon")).toBe(1);
  });

  it("works for a background-field run, phases following the areal law", () => {
    const rows = loadRows("insulator_results.csv");
    const svg = renderPlot("phase_vs_R", rows, loadSummary("insulator_summary.json"));
    // every row of the exchange table carries a phase (half loops and loops)
    expect(count(svg, 'class="datapoint"')).toBe(rows.length);
    expect(svg).toContain("loop phase vs radius");
  });
});

describe("charge_vs_R", () => {
  it("deduplicates the per-radius fit and draws the quantized guides", () => {
    const rows = loadRows("benchmark_results.csv");
    const svg = renderPlot("charge_vs_R", rows, null);
    const pairs = new Set(rows.filter((r) => r.q_star !== null).map((r) => `${r.experiment_id}|${r.R}`));
    expect(count(svg, 'class="datapoint"')).toBe(pairs.size);
    expect(count(svg, 'class="prediction"')).toBe(2);
  });

  it("plots windowed charges from a charge-operator run", () => {
    const rows = loadRows("charge_results.csv");
    const svg = renderPlot("charge_vs_R", rows, null);
    expect(count(svg, 'class="datapoint"')).toBe(rows.filter((r) => r.charge_q !== null).length);
    expect(svg).toContain("(window)");
  });
});

describe("exchange_vs_R", () => {
  it("draws exchange phases against the fermionic reference lines", () => {
    const rows = loadRows("insulator_results.csv");
    const svg = renderPlot("exchange_vs_R", rows, null);
    expect(count(svg, 'class="datapoint"')).toBe(rows.filter((r) => r.phi_exc !== null).length);
    expect(count(svg, 'class="prediction"')).toBe(2);
  });

  it("handles the larger lattice without any change in structure", () => {
    const rows = loadRows("large_insulator_results.csv");
    const svg = renderPlot("exchange_vs_R", rows, null);
    expect(count(svg, 'class="datapoint"')).toBe(rows.filter((r) => r.phi_exc !== null).length);
  });

  it("refuses a table with no exchange phases", () => {
    const rows = loadRows("charge_results.csv");
    expect(() => renderPlot("exchange_vs_R", rows, null)).toThrowError(/exchange phase/);
  });
});

describe("density_map", () => {
  it("renders reference, pinned and difference panels per experiment", () => {
    const summary = loadSummary("charge_summary.json");
    const svg = renderPlot("density_map", [], summary);
    expect(svg).toContain("charge_one_pin: no pin");
    expect(svg).toContain("charge_one_pin: pinned");
    expect(svg).toContain("charge_one_pin: difference");
    expect(svg).toContain("charge_two_pins: pinned");
    // two experiments x three panels x a 15 x 15 lattice, plus the backdrop
    expect(count(svg, "<rect")).toBeGreaterThanOrEqual(2 * 3 * 15 * 15);
  });

  it("needs a summary with density grids", () => {
    expect(() => renderPlot("density_map", [], null)).toThrowError(/summary/);
    expect(() => renderPlot("density_map", [], loadSummary("insulator_summary.json"))).toThrowError(
      /density grids/,
    );
  });
});

describe("determinism", () => {
  it("renders byte-identical output from identical inputs", () => {
    for (const kind of ["phase_vs_R", "charge_vs_R", "exchange_vs_R"] as const) {
      const a = renderPlot(kind, loadRows("insulator_results.csv"), loadSummary("insulator_summary.json"));
      const b = renderPlot(kind, loadRows("insulator_results.csv"), loadSummary("insulator_summary.json"));
      expect(a).toBe(b);
    }
    const da = renderPlot("density_map", [], loadSummary("charge_summary.json"));
    const db = renderPlot("density_map", [], loadSummary("charge_summary.json"));
    expect(crypto.createHash("sha256").update(da).digest("hex")).toBe(
      crypto.createHash("sha256").update(db).digest("hex"),
    );
  });

  it("contains no timestamps, locale text or random ids", () => {
    const svg = renderPlot("phase_vs_R", loadRows("benchmark_results.csv"), null);
    expect(svg).not.toMatch(/\d{4}-\d{2}-\d{2}/);
    expect(svg).not.toMatch(/id="[a-z0-9]{8,}"/);
  });
});
