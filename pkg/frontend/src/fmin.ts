/**
 * Minimal fmin-style optimizer used by the example experiment: seeded
 * uniform random search over the problem's box.
 */

import type { Problem } from "./index.js";

/** splitmix64 as a [0, 1) generator; deterministic across platforms. */
export function makeRng(seed: bigint): () => number {
  const MASK = (1n << 64n) - 1n;
  let state = seed & MASK;
  return () => {
    state = (state + 0x9e3779b97f4a7c15n) & MASK;
    let z = state;
    z = ((z ^ (z >> 30n)) * 0xbf58476d1ce4e5b9n) & MASK;
    z = ((z ^ (z >> 27n)) * 0x94d049bb133111ebn) & MASK;
    z = z ^ (z >> 31n);
    return Number(z >> 11n) * 2 ** -53;
  };
}

/**
 * Evaluate the start point, then up to maxEvaluations - 1 uniform
 * points; returns early when the problem reports its final target hit.
 */
export async function fminRandomSearch(
  problem: Problem,
  x0: readonly number[],
  maxEvaluations: number,
  rng: () => number,
): Promise<void> {
  if (maxEvaluations < 1) {
    return;
  }
  const { lower_bounds: lower, upper_bounds: upper, dimension } = problem;
  await problem.evaluate(x0);
  const x = new Array<number>(dimension);
  for (let k = 1; k < maxEvaluations && !problem.final_target_hit; k++) {
    for (let t = 0; t < dimension; t++) {
      x[t] = lower[t] + rng() * (upper[t] - lower[t]);
    }
    await problem.evaluate(x);
  }
}

/** Restart point matching the harness convention: triangular box draw. */
export function restartPoint(problem: Problem, rng: () => number): number[] {
  const { lower_bounds: lower, upper_bounds: upper, dimension } = problem;
  const x = new Array<number>(dimension);
  for (let t = 0; t < dimension; t++) {
    x[t] = lower[t] + ((rng() + rng()) * (upper[t] - lower[t])) / 2;
  }
  return x;
}
