/** Display formatting only; the browser never computes index values. */

export function formatAivi(value: number): string {
  return value.toFixed(3);
}

export function formatWeight(value: number): string {
  return `${(value * 100).toFixed(1)}%`;
}

export function formatQuantile(value: number): string {
  return value.toFixed(3);
}

export function formatDelta(low: number, high: number): string {
  return `${low.toFixed(3)} … ${high.toFixed(3)}`;
}
