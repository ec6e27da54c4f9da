import { describe, expect, it } from "vitest";

import { arealPhase, curveRadii, partialCapturePhase } from "../src/predictions";

describe("partialCapturePhase", () => {
  it("grows with the enclosed disk and saturates at the full defect", () => {
    const dphi = 0.08;
    const small = partialCapturePhase(0.5, dphi, 1);
    const mid = partialCapturePhase(1.0, dphi, 1);
    expect(small).toBeGreaterThan(0);
    expect(mid).toBeGreaterThan(small);
    // pi R^2 = 4 at R ~ 1.1284; all larger loops see the same flux
    const full = 2 * Math.PI * dphi;
    expect(partialCapturePhase(2, dphi, 1)).toBeCloseTo(full, 12);
    expect(partialCapturePhase(6, dphi, 1)).toBeCloseTo(full, 12);
  });

  it("is odd in the carrier charge", () => {
    expect(partialCapturePhase(1.5, 0.04, -1)).toBeCloseTo(-partialCapturePhase(1.5, 0.04, 1), 12);
  });
});

describe("arealPhase", () => {
  it("matches the independently computed loop phase at alpha=0.2, R=3", () => {
    // 2*pi * (0.2 * pi * 9) = 3.6 * pi^2 for a plain loop, no defect flux
    expect(arealPhase(3, 0, 0.2, 1)).toBeCloseTo(3.6 * Math.PI * Math.PI, 12);
    expect(arealPhase(3, 0, 0.2, 1)).toBeCloseTo(35.5306, 3);
  });

  it("adds a fully enclosed defect linearly", () => {
    const base = arealPhase(4, 0, 0.2, 1);
    expect(arealPhase(4, 0.05, 0.2, 1) - base).toBeCloseTo(2 * Math.PI * 0.05, 12);
  });
});

describe("curveRadii", () => {
  it("always contains the measured radii exactly", () => {
    const data = [1, 2.5, 3.3333333333333335, 5];
    const rs = curveRadii(data);
    for (const r of data) {
      expect(rs).toContain(r);
    }
    expect(rs.length).toBeGreaterThan(100);
    for (let i = 1; i < rs.length; i++) {
      expect(rs[i]).toBeGreaterThan(rs[i - 1]);
    }
  });

  it("collapses to the single radius when there is no spread", () => {
    expect(curveRadii([2, 2])).toEqual([2]);
  });
});
