/**
 * Closed-form phase predictions overlaid on measured data.
 *
 * These mirror the analytic reference curves used by the simulation side;
 * the plots never rerun any quantum mechanics, they only evaluate these two
 * formulas at the radii present in the table.
 */

export const TWO_PI = 2 * Math.PI;

/**
 * Loop phase from a 2x2 flux defect of total strength deltaPhi (flux
 * delta_phi/4 per plaquette), with no background field.  A loop of radius R
 * captures the disk-overlap fraction pi R^2 of the four defect plaquettes
 * and saturates once the disk covers all of them.
 */
export function partialCapturePhase(R: number, deltaPhi: number, qStar: number): number {
  return TWO_PI * qStar * (deltaPhi / 4) * Math.min(4, Math.PI * R * R);
}

/**
 * Loop phase in a uniform background flux alpha per plaquette plus a fully
 * enclosed extra flux deltaPhi: the areal law.
 */
export function arealPhase(R: number, deltaPhi: number, alpha: number, qStar: number): number {
  return TWO_PI * qStar * (alpha * Math.PI * R * R + deltaPhi);
}

/**
 * Radii at which to sample a prediction curve: a uniform sweep over
 * [rMin, rMax] merged with the exact radii in the data, so measured points
 * that follow the law land exactly on a curve vertex.
 */
export function curveRadii(dataRadii: number[], samples = 120): number[] {
  const rs = new Set<number>(dataRadii);
  const rMin = Math.min(...dataRadii);
  const rMax = Math.max(...dataRadii);
  if (rMax > rMin) {
    for (let i = 0; i <= samples; i++) {
      rs.add(rMin + ((rMax - rMin) * i) / samples);
    }
  }
  return [...rs].sort((a, b) => a - b);
}
