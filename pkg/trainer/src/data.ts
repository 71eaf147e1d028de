/** JSONL dataset and manifest loading, vocabulary, and example encoding.
 *
 * Reads the record schema {id, src, tgt, labels} and the manifest schema
 * {stages: [{name, path, iterations}]} exactly as emitted by the data
 * pipeline. Sentences may carry a literal "[CLS] " text prefix; the loader
 * maps it to the vocabulary's classifier token and inserts one for
 * unprefixed sentences too, so every sentence has a classifier position.
 */

import * as fs from "node:fs";

import type { EncodedExample, RawExample, Stage, StageManifest } from "./types.js";

export const CLS_TEXT_MARKER = "[CLS] ";

const TOKEN_RE = /[\p{L}\p{N}]+/gu;

export function normalize(text: string): string[] {
  return text.toLowerCase().match(TOKEN_RE) ?? [];
}

export function stripCls(sentence: string): string {
  return sentence.startsWith(CLS_TEXT_MARKER) ? sentence.slice(CLS_TEXT_MARKER.length) : sentence;
}

const RECORD_FIELDS = ["id", "src", "tgt", "labels"];

export function loadDataset(path: string): RawExample[] {
  const examples: RawExample[] = [];
  const lines = fs.readFileSync(path, "utf-8").split("\n");
  lines.forEach((line, index) => {
    if (!line.trim()) return;
    const lineno = index + 1;
    let record: unknown;
    try {
      record = JSON.parse(line);
    } catch (err) {
      throw new Error(`${path}:${lineno}: invalid JSON: ${(err as Error).message}`);
    }
    const obj = record as Record<string, unknown>;
    if (
      typeof record !== "object" ||
      record === null ||
      Object.keys(obj).sort().join(",") !== [...RECORD_FIELDS].sort().join(",")
    ) {
      throw new Error(`${path}:${lineno}: expected exactly the fields ${RECORD_FIELDS.join(", ")}`);
    }
    const { id, src, tgt, labels } = obj as {
      id: unknown; src: unknown; tgt: unknown; labels: unknown;
    };
    if (typeof id !== "string" || typeof tgt !== "string") {
      throw new Error(`${path}:${lineno}: id and tgt must be strings`);
    }
    if (!Array.isArray(src) || !src.every((s) => typeof s === "string")) {
      throw new Error(`${path}:${lineno}: src must be a list of strings`);
    }
    if (labels !== null) {
      if (!Array.isArray(labels) || !labels.every((v) => v === 0 || v === 1)) {
        throw new Error(`${path}:${lineno}: labels must be null or a list of 0/1`);
      }
      if (labels.length !== src.length) {
        throw new Error(
          `${path}:${lineno}: ${labels.length} labels for ${src.length} sentences`
        );
      }
    }
    examples.push({ id, src, tgt, labels: labels as number[] | null });
  });
  return examples;
}

export function loadManifest(path: string): StageManifest {
  const record = JSON.parse(fs.readFileSync(path, "utf-8")) as { stages?: unknown };
  if (!Array.isArray(record.stages)) {
    throw new Error(`${path}: manifest must contain a stages array`);
  }
  const stages: Stage[] = record.stages.map((raw, i) => {
    const stage = raw as { name?: unknown; path?: unknown; iterations?: unknown };
    if (
      typeof stage.name !== "string" ||
      typeof stage.path !== "string" ||
      typeof stage.iterations !== "number" ||
      stage.iterations <= 0
    ) {
      throw new Error(`${path}: stage ${i} must have name, path and positive iterations`);
    }
    return { name: stage.name, path: stage.path, iterations: stage.iterations };
  });
  return { stages };
}

export class Vocabulary {
  readonly ids = new Map<string, number>();
  readonly tokens: string[] = [];

  readonly cls: number;
  readonly bos: number;
  readonly eos: number;
  readonly unk: number;

  constructor(words: Iterable<string>) {
    this.cls = this.intern("<cls>");
    this.bos = this.intern("<bos>");
    this.eos = this.intern("<eos>");
    this.unk = this.intern("<unk>");
    for (const word of [...new Set(words)].sort()) this.intern(word);
  }

  private intern(token: string): number {
    let id = this.ids.get(token);
    if (id === undefined) {
      id = this.tokens.length;
      this.tokens.push(token);
      this.ids.set(token, id);
    }
    return id;
  }

  get size(): number {
    return this.tokens.length;
  }

  lookup(word: string): number {
    return this.ids.get(word) ?? this.unk;
  }
}

export function buildVocabulary(examples: RawExample[]): Vocabulary {
  const words: string[] = [];
  for (const example of examples) {
    for (const sentence of example.src) words.push(...normalize(stripCls(sentence)));
    words.push(...normalize(example.tgt));
  }
  return new Vocabulary(words);
}

export function encodeExample(example: RawExample, vocab: Vocabulary): EncodedExample {
  if (example.src.length === 0) {
    throw new Error(`${example.id}: example has no sentences`);
  }
  if (example.labels === null) {
    throw new Error(`${example.id}: training requires oracle labels`);
  }
  const encoderIds: number[] = [];
  const clsPositions: number[] = [];
  for (const sentence of example.src) {
    clsPositions.push(encoderIds.length);
    encoderIds.push(vocab.cls);
    for (const token of normalize(stripCls(sentence))) {
      encoderIds.push(vocab.lookup(token));
    }
  }
  const targetTokens = normalize(example.tgt).map((t) => vocab.lookup(t));
  return {
    id: example.id,
    encoderIds,
    clsPositions,
    labels: [...example.labels],
    targetIn: [vocab.bos, ...targetTokens],
    targetOut: [...targetTokens, vocab.eos],
    tgt: example.tgt,
  };
}
