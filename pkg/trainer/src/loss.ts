/** Joint extractive+abstractive objective: L = wE * L_e + L_a.
 *
 * L_e is mean binary cross-entropy over per-sentence logits; L_a is mean
 * token cross-entropy over the target positions of a normalized decoder
 * distribution.
 */

import type { CombinedLoss, LossWeights } from "./types.js";

export function sigmoid(x: number): number {
  return x >= 0 ? 1 / (1 + Math.exp(-x)) : Math.exp(x) / (1 + Math.exp(x));
}

/** Numerically stable BCE-with-logits averaged over sentences. */
export function extractiveLoss(sentenceLogits: number[], labels: number[]): number {
  if (sentenceLogits.length !== labels.length) {
    throw new Error(`${sentenceLogits.length} logits for ${labels.length} labels`);
  }
  if (sentenceLogits.length === 0) {
    throw new Error("no sentence logits");
  }
  let total = 0;
  for (let i = 0; i < sentenceLogits.length; i++) {
    const z = sentenceLogits[i];
    const y = labels[i];
    total += Math.max(z, 0) - z * y + Math.log(1 + Math.exp(-Math.abs(z)));
  }
  return total / sentenceLogits.length;
}

/** Mean negative log-probability of the targets under row distributions. */
export function abstractiveLoss(tokenProbs: number[][], targets: number[]): number {
  if (tokenProbs.length !== targets.length) {
    throw new Error(`${tokenProbs.length} distribution rows for ${targets.length} targets`);
  }
  if (targets.length === 0) {
    throw new Error("no target tokens");
  }
  let total = 0;
  for (let t = 0; t < targets.length; t++) {
    const p = tokenProbs[t][targets[t]];
    total += -Math.log(Math.max(p, 1e-300));
  }
  return total / targets.length;
}

export function combinedLoss(
  sentenceLogits: number[],
  labels: number[],
  tokenProbs: number[][],
  targets: number[],
  weights: LossWeights,
): CombinedLoss {
  const lE = extractiveLoss(sentenceLogits, labels);
  const lA = abstractiveLoss(tokenProbs, targets);
  return { l: weights.wE * lE + lA, lE, lA };
}

/** Analytic d(combinedLoss)/d(sentenceLogits): wE * (sigmoid(z) - y) / S. */
export function sentenceLogitGradient(
  sentenceLogits: number[],
  labels: number[],
  weights: LossWeights,
): number[] {
  const n = sentenceLogits.length;
  return sentenceLogits.map((z, i) => (weights.wE * (sigmoid(z) - labels[i])) / n);
}

export function softmax(logits: Float64Array | number[]): Float64Array {
  let max = -Infinity;
  for (const v of logits) max = Math.max(max, v);
  const out = new Float64Array(logits.length);
  let sum = 0;
  for (let i = 0; i < logits.length; i++) {
    out[i] = Math.exp(logits[i] - max);
    sum += out[i];
  }
  for (let i = 0; i < logits.length; i++) out[i] /= sum;
  return out;
}
