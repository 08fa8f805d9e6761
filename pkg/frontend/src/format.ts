/**
 * Presentation-only formatting. The UI never computes domain quantities;
 * these helpers only re-render numbers the service already produced.
 */

export function percent(value: number): string {
  return `${(value * 100).toFixed(2)}%`;
}

export function num(value: number): string {
  return value.toFixed(4);
}

/** CSS class for a pair-product badge; 1 means the pair is reciprocal. */
export function thetaClass(theta: number | null): string {
  if (theta === null) return "badge-unset";
  if (theta > 1) return "badge-violation";
  if (theta >= 0.999999999) return "badge-reciprocal";
  if (theta >= 0.75) return "badge-mild";
  return "badge-strong";
}
