/** Stage-ordered training loop with gradient accumulation, a JSONL metric
 * log {iteration, loss, L_e, L_a, val_rouge1_f1}, and best-checkpoint
 * selection by validation Rouge1-F1. */

import * as fs from "node:fs";
import * as path from "node:path";

import { Vocabulary, buildVocabulary, encodeExample, loadDataset } from "./data.js";
import { ToyModel } from "./model.js";
import { rouge1F1 } from "./rougeBridge.js";
import { learningRate, validateSchedule } from "./schedule.js";
import type {
  EncodedExample,
  LossWeights,
  MetricLogEntry,
  ModelShapeConfig,
  ScheduleConfig,
  StageManifest,
} from "./types.js";

export interface TrainOptions {
  manifest: StageManifest;
  schedule: ScheduleConfig;
  weights: LossWeights;
  shape: ModelShapeConfig;
  outDir: string;
  /** Validation JSONL; enables Rouge1-F1 tracking when set. */
  valPath?: string;
  /** Evaluate every N iterations (0 disables evaluation). */
  evalInterval?: number;
  /** Cap on per-stage iterations for toy runs; 0 keeps manifest budgets. */
  iterationCap?: number;
  decodeLength?: number;
}

export interface StageRun {
  name: string;
  path: string;
  iterations: number;
  firstIteration: number;
  lastIteration: number;
}

export interface TrainResult {
  stages: StageRun[];
  logPath: string;
  checkpointPath: string | null;
  bestValRouge1F1: number | null;
  firstLoss: number;
  lastLoss: number;
}

/** The metric-log entry the best-checkpoint rule selects: highest
 * val_rouge1_f1, earliest on ties, nulls skipped. */
export function bestCheckpointEntry(log: MetricLogEntry[]): MetricLogEntry | null {
  let best: MetricLogEntry | null = null;
  for (const entry of log) {
    if (entry.val_rouge1_f1 === null) continue;
    if (best === null || entry.val_rouge1_f1 > (best.val_rouge1_f1 as number)) {
      best = entry;
    }
  }
  return best;
}

export function atomicWrite(filePath: string, payload: string): void {
  const tmp = `${filePath}.tmp`;
  fs.writeFileSync(tmp, payload);
  fs.renameSync(tmp, filePath);
}

export function train(options: TrainOptions): TrainResult {
  validateSchedule(options.schedule);
  if (options.manifest.stages.length === 0) {
    throw new Error("manifest has no stages");
  }
  // resolve and load every stage up front: a broken path must fail
  // before any training happens
  const stageData = options.manifest.stages.map((stage) => {
    if (!fs.existsSync(stage.path)) {
      throw new Error(`stage ${stage.name}: dataset not found: ${stage.path}`);
    }
    return { stage, examples: loadDataset(stage.path) };
  });
  for (const { stage, examples } of stageData) {
    if (examples.length === 0) {
      throw new Error(`stage ${stage.name}: dataset is empty: ${stage.path}`);
    }
  }
  const valExamples = options.valPath ? loadDataset(options.valPath) : [];

  const vocab = buildVocabulary([
    ...stageData.flatMap((s) => s.examples),
    ...valExamples,
  ]);
  const model = new ToyModel(options.shape, vocab.size);
  const encodedStages = stageData.map(({ stage, examples }) => ({
    stage,
    examples: examples.map((e) => encodeExample(e, vocab)),
  }));
  const encodedVal = valExamples.map((e) => encodeExample(e, vocab));

  fs.mkdirSync(options.outDir, { recursive: true });
  const logPath = path.join(options.outDir, "metrics.jsonl");
  const checkpointPath = path.join(options.outDir, "checkpoint.json");
  const log: MetricLogEntry[] = [];

  const evalInterval = options.evalInterval ?? 0;
  const decodeLength = options.decodeLength ?? 32;
  let bestVal: number | null = null;
  let savedCheckpoint = false;

  const validationScore = (): number =>
    rouge1F1(
      encodedVal.map((example) => ({
        id: example.id.replace(/[^A-Za-z0-9_.-]/g, "_"),
        candidate: model
          .greedyDecode(example.encoderIds, vocab.bos, vocab.eos, decodeLength)
          .map((id) => vocab.tokens[id])
          .join(" "),
        reference: example.tgt,
      })),
    );

  const stages: StageRun[] = [];
  const grads = model.zeroGradients();
  let globalIteration = 0;
  let firstLoss = NaN;
  let lastLoss = NaN;

  for (const { stage, examples } of encodedStages) {
    const budget =
      options.iterationCap && options.iterationCap > 0
        ? Math.min(stage.iterations, options.iterationCap)
        : stage.iterations;
    const firstIteration = globalIteration + 1;
    for (let iter = 1; iter <= budget; iter++) {
      globalIteration += 1;
      let loss = 0;
      let lE = 0;
      let lA = 0;
      for (let b = 0; b < options.schedule.batchSize; b++) {
        const index = ((iter - 1) * options.schedule.batchSize + b) % examples.length;
        const result = model.forwardBackward(examples[index], options.weights, grads);
        loss += result.l;
        lE += result.lE;
        lA += result.lA;
      }
      loss /= options.schedule.batchSize;
      lE /= options.schedule.batchSize;
      lA /= options.schedule.batchSize;
      if (Number.isNaN(firstLoss)) firstLoss = loss;
      lastLoss = loss;

      if (iter % options.schedule.gradientAccumulation === 0) {
        model.applyUpdate(grads, learningRate(iter, options.schedule));
      }

      let valScore: number | null = null;
      if (evalInterval > 0 && encodedVal.length > 0 && iter % evalInterval === 0) {
        valScore = validationScore();
        if (bestVal === null || valScore > bestVal) {
          bestVal = valScore;
          atomicWrite(checkpointPath, JSON.stringify(model.toJSON(vocab.tokens)));
          savedCheckpoint = true;
        }
      }
      const entry: MetricLogEntry = {
        iteration: globalIteration,
        loss,
        L_e: lE,
        L_a: lA,
        val_rouge1_f1: valScore,
      };
      log.push(entry);
    }
    stages.push({
      name: stage.name,
      path: stage.path,
      iterations: budget,
      firstIteration,
      lastIteration: globalIteration,
    });
  }

  // leftover partial accumulation window
  if (grads.count > 0) {
    model.applyUpdate(grads, learningRate(Math.max(globalIteration, 1), options.schedule));
  }
  if (!savedCheckpoint) {
    atomicWrite(checkpointPath, JSON.stringify(model.toJSON(vocab.tokens)));
  }
  atomicWrite(logPath, log.map((entry) => JSON.stringify(entry)).join("\n") + "\n");

  const bestEntry = bestCheckpointEntry(log);
  return {
    stages,
    logPath,
    checkpointPath,
    bestValRouge1F1: bestEntry ? bestEntry.val_rouge1_f1 : null,
    firstLoss,
    lastLoss,
  };
}

export { Vocabulary };
export type { EncodedExample };
