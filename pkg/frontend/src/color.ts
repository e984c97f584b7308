// Heatmap coloring by density rank rather than raw value: clustered
// data is so skewed that a linear value scale paints almost every
// occupied cell the same shade. Ranking spreads the palette over the
// densities actually present; the raw value is shown on hover instead.

const RAMP: [number, number, number][] = [
  [255, 245, 200],
  [254, 204, 92],
  [253, 141, 60],
  [227, 26, 28],
  [128, 0, 38],
];

export const EMPTY_CELL = "#1c2128";

function hex(channel: number): string {
  return Math.round(channel).toString(16).padStart(2, "0");
}

/** Sample the ramp at t in [0, 1]. */
export function rampColor(t: number): string {
  const clamped = Math.min(1, Math.max(0, t));
  const scaled = clamped * (RAMP.length - 1);
  const lo = Math.floor(scaled);
  const hi = Math.min(RAMP.length - 1, lo + 1);
  const frac = scaled - lo;
  const [r1, g1, b1] = RAMP[lo];
  const [r2, g2, b2] = RAMP[hi];
  return (
    "#" +
    hex(r1 + (r2 - r1) * frac) +
    hex(g1 + (g2 - g1) * frac) +
    hex(b1 + (b2 - b1) * frac)
  );
}

/**
 * Map every distinct nonzero density to a color by its rank. A single
 * distinct density takes the top of the ramp so an all-equal scene
 * still reads as occupied.
 */
export function rankColors(densities: Iterable<number>): Map<number, string> {
  const distinct = [...new Set<number>(densities)]
    .filter((d) => d > 0)
    .sort((a, b) => a - b);
  const colors = new Map<number, string>();
  const span = distinct.length - 1;
  for (let rank = 0; rank < distinct.length; rank++) {
    const t = span === 0 ? 1 : rank / span;
    colors.set(distinct[rank], rampColor(t));
  }
  return colors;
}
