/** Simplex projection for slider moves.
 *
 * Mirrors the server's one-at-a-time perturbation convention: the moved
 * weight is clipped to [0, 1] and the rest of the group is rescaled
 * proportionally to absorb the difference, so the group always sums to 1
 * and passes server-side weight validation.
 */

export type WeightMap = Record<string, number>;

export function renormalize(weights: WeightMap, target: string, value: number): WeightMap {
  if (!(target in weights)) {
    throw new Error(`unknown weight id ${target}`);
  }
  const ids = Object.keys(weights);
  const next = Math.min(1, Math.max(0, value));
  if (ids.length === 1) {
    return { [target]: 1 };
  }
  const others = ids.filter((id) => id !== target);
  const mass = others.reduce((acc, id) => acc + (weights[id] ?? 0), 0);
  const out: WeightMap = {};
  if (mass > 0) {
    const factor = (1 - next) / mass;
    for (const id of ids) {
      out[id] = id === target ? next : (weights[id] ?? 0) * factor;
    }
  } else {
    const share = (1 - next) / others.length;
    for (const id of ids) {
      out[id] = id === target ? next : share;
    }
  }
  return out;
}

/** Whether a weight group would pass server validation (sum within 1e-9). */
export function isValidWeightGroup(weights: WeightMap): boolean {
  const values = Object.values(weights);
  if (values.length === 0) return false;
  if (values.some((w) => !Number.isFinite(w) || w < 0 || w > 1)) return false;
  const total = values.reduce((acc, w) => acc + w, 0);
  return Math.abs(total - 1) <= 1e-9;
}
