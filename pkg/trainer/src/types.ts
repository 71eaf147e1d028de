/** Shared shapes for the toy multi-label summarization trainer. */

export interface LossWeights {
  /** Extractive loss weight; 0 reduces training to pure abstractive. */
  wE: number;
}

export interface CombinedLoss {
  l: number;
  lE: number;
  lA: number;
}

export interface ScheduleConfig {
  warmupIterations: number;
  totalIterations: number;
  batchSize: number;
  gradientAccumulation: number;
  baseLearningRate: number;
}

export interface ModelShapeConfig {
  hiddenSize: number;
  /** Rounds of context mixing in the encoder. */
  layers: number;
  seed: number;
  /** Path to previously saved weights; absent means toy-random init. */
  pretrainedPath?: string;
}

export interface RawExample {
  id: string;
  src: string[];
  tgt: string;
  labels: number[] | null;
}

export interface EncodedExample {
  id: string;
  /** Encoder token ids with one classifier token per sentence. */
  encoderIds: number[];
  /** Positions of the classifier tokens inside encoderIds. */
  clsPositions: number[];
  labels: number[];
  /** Teacher-forcing decoder input (starts with BOS). */
  targetIn: number[];
  /** Decoder targets (ends with EOS). */
  targetOut: number[];
  tgt: string;
}

export interface Stage {
  name: string;
  path: string;
  iterations: number;
}

export interface StageManifest {
  stages: Stage[];
}

export interface MetricLogEntry {
  iteration: number;
  loss: number;
  L_e: number;
  L_a: number;
  val_rouge1_f1: number | null;
}
