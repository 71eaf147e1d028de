/** Toy encoder-decoder with a per-sentence classifier head.
 *
 * Encoder: tied token embeddings smoothed by `layers` rounds of global
 * context mixing (h_i <- (h_i + mean(h)) / 2), so every position sees the
 * whole input. The classifier head turns each classifier-token state into
 * one extractive logit. Decoder: at each step the previous target token's
 * embedding plus the encoder context feeds a linear layer over the
 * vocabulary. Gradients are computed analytically; no autograd.
 */

import * as fs from "node:fs";

import { sigmoid, softmax } from "./loss.js";
import type { EncodedExample, LossWeights, ModelShapeConfig } from "./types.js";

export interface ForwardResult {
  sentenceLogits: number[];
  tokenProbs: number[][];
}

export interface Gradients {
  emb: Float64Array;
  clsW: Float64Array;
  clsB: number;
  outW: Float64Array;
  outB: Float64Array;
  count: number;
}

/** Deterministic 32-bit PRNG for reproducible toy-random init. */
export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a |= 0;
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export class ToyModel {
  readonly config: ModelShapeConfig;
  readonly vocabSize: number;
  readonly dim: number;

  emb: Float64Array;
  clsW: Float64Array;
  clsB: number;
  outW: Float64Array;
  outB: Float64Array;

  constructor(config: ModelShapeConfig, vocabSize: number) {
    if (config.hiddenSize < 1 || config.layers < 1) {
      throw new Error("hiddenSize and layers must be >= 1");
    }
    this.config = config;
    this.vocabSize = vocabSize;
    this.dim = config.hiddenSize;
    const rand = mulberry32(config.seed);
    const init = (n: number, scale: number) => {
      const arr = new Float64Array(n);
      for (let i = 0; i < n; i++) arr[i] = (rand() * 2 - 1) * scale;
      return arr;
    };
    this.emb = init(vocabSize * this.dim, 0.1);
    this.clsW = init(this.dim, 0.1);
    this.clsB = 0;
    this.outW = init(vocabSize * this.dim, 0.1);
    this.outB = new Float64Array(vocabSize);
  }

  zeroGradients(): Gradients {
    return {
      emb: new Float64Array(this.emb.length),
      clsW: new Float64Array(this.clsW.length),
      clsB: 0,
      outW: new Float64Array(this.outW.length),
      outB: new Float64Array(this.outB.length),
      count: 0,
    };
  }

  /** Encoder states after context mixing, plus their mean as the context. */
  private encode(encoderIds: number[]): { states: Float64Array[]; context: Float64Array } {
    const d = this.dim;
    const n = encoderIds.length;
    let states = encoderIds.map((id) => {
      const h = new Float64Array(d);
      h.set(this.emb.subarray(id * d, (id + 1) * d));
      return h;
    });
    for (let round = 0; round < this.config.layers; round++) {
      const mean = new Float64Array(d);
      for (const h of states) for (let k = 0; k < d; k++) mean[k] += h[k] / n;
      states = states.map((h) => {
        const next = new Float64Array(d);
        for (let k = 0; k < d; k++) next[k] = 0.5 * h[k] + 0.5 * mean[k];
        return next;
      });
    }
    const context = new Float64Array(d);
    for (const h of states) for (let k = 0; k < d; k++) context[k] += h[k] / n;
    return { states, context };
  }

  private decoderLogits(u: Float64Array): Float64Array {
    const d = this.dim;
    const logits = new Float64Array(this.vocabSize);
    for (let v = 0; v < this.vocabSize; v++) {
      let acc = this.outB[v];
      const row = v * d;
      for (let k = 0; k < d; k++) acc += this.outW[row + k] * u[k];
      logits[v] = acc;
    }
    return logits;
  }

  forward(example: EncodedExample): ForwardResult {
    if (example.clsPositions.length === 0) {
      throw new Error(`${example.id}: example has no sentences`);
    }
    const d = this.dim;
    const { states, context } = this.encode(example.encoderIds);
    const sentenceLogits = example.clsPositions.map((pos) => {
      let z = this.clsB;
      for (let k = 0; k < d; k++) z += this.clsW[k] * states[pos][k];
      return z;
    });
    const tokenProbs: number[][] = example.targetIn.map((prev) => {
      const u = new Float64Array(d);
      const row = prev * d;
      for (let k = 0; k < d; k++) u[k] = this.emb[row + k] + context[k];
      return Array.from(softmax(this.decoderLogits(u)));
    });
    return { sentenceLogits, tokenProbs };
  }

  /** Forward pass plus analytic gradients of L = wE * L_e + L_a. */
  forwardBackward(
    example: EncodedExample,
    weights: LossWeights,
    grads: Gradients,
  ): { l: number; lE: number; lA: number } {
    const d = this.dim;
    const n = example.encoderIds.length;
    const { states, context } = this.encode(example.encoderIds);

    // extractive head
    const s = example.clsPositions.length;
    if (s === 0) throw new Error(`${example.id}: example has no sentences`);
    const dStates = states.map(() => new Float64Array(d));
    let lE = 0;
    for (let i = 0; i < s; i++) {
      const pos = example.clsPositions[i];
      let z = this.clsB;
      for (let k = 0; k < d; k++) z += this.clsW[k] * states[pos][k];
      const y = example.labels[i];
      lE += Math.max(z, 0) - z * y + Math.log(1 + Math.exp(-Math.abs(z)));
      const dz = (weights.wE * (sigmoid(z) - y)) / s;
      for (let k = 0; k < d; k++) {
        grads.clsW[k] += dz * states[pos][k];
        dStates[pos][k] += dz * this.clsW[k];
      }
      grads.clsB += dz;
    }
    lE /= s;

    // abstractive decoder (teacher forcing)
    const T = example.targetOut.length;
    if (T === 0) throw new Error(`${example.id}: empty target`);
    const dContext = new Float64Array(d);
    let lA = 0;
    for (let t = 0; t < T; t++) {
      const prev = example.targetIn[t];
      const u = new Float64Array(d);
      const prevRow = prev * d;
      for (let k = 0; k < d; k++) u[k] = this.emb[prevRow + k] + context[k];
      const probs = softmax(this.decoderLogits(u));
      const target = example.targetOut[t];
      lA += -Math.log(Math.max(probs[target], 1e-300));
      const dU = new Float64Array(d);
      for (let v = 0; v < this.vocabSize; v++) {
        const dOut = (probs[v] - (v === target ? 1 : 0)) / T;
        if (dOut === 0) continue;
        const row = v * d;
        for (let k = 0; k < d; k++) {
          grads.outW[row + k] += dOut * u[k];
          dU[k] += dOut * this.outW[row + k];
        }
        grads.outB[v] += dOut;
      }
      for (let k = 0; k < d; k++) {
        grads.emb[prevRow + k] += dU[k];
        dContext[k] += dU[k];
      }
    }
    lA /= T;

    // context = mean of final states
    for (const dh of dStates) {
      for (let k = 0; k < d; k++) dh[k] += dContext[k] / n;
    }
    // reverse the mixing rounds: h' = 0.5 h + 0.5 mean(h) is linear
    let dCur = dStates;
    for (let round = 0; round < this.config.layers; round++) {
      const meanGrad = new Float64Array(d);
      for (const dh of dCur) for (let k = 0; k < d; k++) meanGrad[k] += dh[k] / n;
      dCur = dCur.map((dh) => {
        const prev = new Float64Array(d);
        for (let k = 0; k < d; k++) prev[k] = 0.5 * dh[k] + 0.5 * meanGrad[k];
        return prev;
      });
    }
    for (let i = 0; i < n; i++) {
      const row = example.encoderIds[i] * d;
      for (let k = 0; k < d; k++) grads.emb[row + k] += dCur[i][k];
    }

    grads.count += 1;
    return { l: weights.wE * lE + lA, lE, lA };
  }

  /** Mean-gradient SGD step; clears the accumulator. */
  applyUpdate(grads: Gradients, learningRate: number): void {
    if (grads.count === 0) return;
    const scale = learningRate / grads.count;
    for (let i = 0; i < this.emb.length; i++) this.emb[i] -= scale * grads.emb[i];
    for (let i = 0; i < this.clsW.length; i++) this.clsW[i] -= scale * grads.clsW[i];
    this.clsB -= scale * grads.clsB;
    for (let i = 0; i < this.outW.length; i++) this.outW[i] -= scale * grads.outW[i];
    for (let i = 0; i < this.outB.length; i++) this.outB[i] -= scale * grads.outB[i];
    grads.emb.fill(0);
    grads.clsW.fill(0);
    grads.clsB = 0;
    grads.outW.fill(0);
    grads.outB.fill(0);
    grads.count = 0;
  }

  /** Greedy decode up to maxLen token ids (BOS/EOS handled internally). */
  greedyDecode(encoderIds: number[], bos: number, eos: number, maxLen: number): number[] {
    const d = this.dim;
    const { context } = this.encode(encoderIds);
    const out: number[] = [];
    let prev = bos;
    for (let t = 0; t < maxLen; t++) {
      const u = new Float64Array(d);
      const row = prev * d;
      for (let k = 0; k < d; k++) u[k] = this.emb[row + k] + context[k];
      const logits = this.decoderLogits(u);
      let best = 0;
      for (let v = 1; v < this.vocabSize; v++) if (logits[v] > logits[best]) best = v;
      if (best === eos) break;
      out.push(best);
      prev = best;
    }
    return out;
  }

  toJSON(vocabTokens: string[]): object {
    return {
      config: { hiddenSize: this.config.hiddenSize, layers: this.config.layers, seed: this.config.seed },
      vocab: vocabTokens,
      params: {
        emb: Array.from(this.emb),
        clsW: Array.from(this.clsW),
        clsB: this.clsB,
        outW: Array.from(this.outW),
        outB: Array.from(this.outB),
      },
    };
  }

  static load(path: string): { model: ToyModel; vocabTokens: string[] } {
    const record = JSON.parse(fs.readFileSync(path, "utf-8"));
    const model = new ToyModel(record.config, record.vocab.length);
    model.emb = Float64Array.from(record.params.emb);
    model.clsW = Float64Array.from(record.params.clsW);
    model.clsB = record.params.clsB;
    model.outW = Float64Array.from(record.params.outW);
    model.outB = Float64Array.from(record.params.outB);
    return { model, vocabTokens: record.vocab };
  }
}
