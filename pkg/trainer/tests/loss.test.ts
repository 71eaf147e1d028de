import { describe, expect, it } from "vitest";

import {
  abstractiveLoss,
  combinedLoss,
  extractiveLoss,
  sentenceLogitGradient,
  sigmoid,
  softmax,
} from "../src/loss.js";

const LOGITS = [0.4, -1.1];
const LABELS = [1, 0];
const PROBS = [
  [0.2, 0.5, 0.3],
  [0.7, 0.1, 0.2],
];
const TARGETS = [1, 0];

// independent hand computations of the two cross-entropies
function handExtractive(logits: number[], labels: number[]): number {
  const terms = logits.map((z, i) => {
    const p = 1 / (1 + Math.exp(-z));
    return -(labels[i] * Math.log(p) + (1 - labels[i]) * Math.log(1 - p));
  });
  return terms.reduce((a, b) => a + b, 0) / terms.length;
}

function handAbstractive(probs: number[][], targets: number[]): number {
  const terms = targets.map((t, i) => -Math.log(probs[i][t]));
  return terms.reduce((a, b) => a + b, 0) / terms.length;
}

describe("combined loss", () => {
  it("reproduces L = wE * L_e + L_a across weights", () => {
    const lE = handExtractive(LOGITS, LABELS);
    const lA = handAbstractive(PROBS, TARGETS);
    for (const wE of [0, 0.5, 1, 2]) {
      const result = combinedLoss(LOGITS, LABELS, PROBS, TARGETS, { wE });
      expect(result.lE).toBeCloseTo(lE, 9);
      expect(result.lA).toBeCloseTo(lA, 9);
      expect(Math.abs(result.l - (wE * lE + lA))).toBeLessThan(1e-6);
    }
  });

  it("reduces to the abstractive loss at wE = 0", () => {
    const result = combinedLoss(LOGITS, LABELS, PROBS, TARGETS, { wE: 0 });
    expect(result.l).toBe(result.lA);
  });

  it("is affine in wE with slope L_e and intercept L_a", () => {
    const at = (wE: number) => combinedLoss(LOGITS, LABELS, PROBS, TARGETS, { wE });
    const base = at(0);
    const slope = (at(2).l - at(0.5).l) / 1.5;
    expect(slope).toBeCloseTo(base.lE, 9);
    expect(at(0).l).toBeCloseTo(base.lA, 9);
    expect(at(1).l).toBeCloseTo(base.lE + base.lA, 9);
  });

  it("vanishes under perfect predictions", () => {
    const confident = combinedLoss(
      [30, -30],
      [1, 0],
      [
        [1e-9, 1 - 2e-9, 1e-9],
        [1 - 2e-9, 1e-9, 1e-9],
      ],
      TARGETS,
      { wE: 1 },
    );
    expect(confident.l).toBeLessThan(1e-6);
  });

  it("rejects shape mismatches", () => {
    expect(() => extractiveLoss([0.1], [1, 0])).toThrow(/logits/);
    expect(() => abstractiveLoss(PROBS, [1])).toThrow(/rows/);
  });
});

describe("gradient against finite differences", () => {
  it("matches d(loss)/d(sentence logits) within 1e-4 relative error", () => {
    const wE = 1.3;
    const analytic = sentenceLogitGradient(LOGITS, LABELS, { wE });
    const eps = 1e-6;
    LOGITS.forEach((z, i) => {
      const plus = [...LOGITS];
      const minus = [...LOGITS];
      plus[i] = z + eps;
      minus[i] = z - eps;
      const fPlus = combinedLoss(plus, LABELS, PROBS, TARGETS, { wE }).l;
      const fMinus = combinedLoss(minus, LABELS, PROBS, TARGETS, { wE }).l;
      const numeric = (fPlus - fMinus) / (2 * eps);
      const relative = Math.abs(numeric - analytic[i]) / Math.max(Math.abs(numeric), 1e-12);
      expect(relative).toBeLessThan(1e-4);
    });
  });
});

describe("primitives", () => {
  it("sigmoid is stable at extremes", () => {
    expect(sigmoid(1000)).toBe(1);
    expect(sigmoid(-1000)).toBeCloseTo(0, 12);
  });

  it("softmax rows normalize", () => {
    const probs = softmax([1.5, -0.2, 3.1, 0.0]);
    let sum = 0;
    for (const p of probs) sum += p;
    expect(sum).toBeCloseTo(1.0, 12);
  });
});
