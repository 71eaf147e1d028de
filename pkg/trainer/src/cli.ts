/** Train the toy model from a stage manifest emitted by the data pipeline.
 *
 * Usage:
 *   node dist/cli.js --manifest out/manifest.json --val out/val.jsonl \
 *     --out runs/demo --iteration-cap 200 --eval-interval 50
 */

import { parseArgs } from "node:util";

import { loadManifest } from "./data.js";
import { DEFAULT_SCHEDULE } from "./schedule.js";
import { train } from "./train.js";

function main(): number {
  const { values } = parseArgs({
    options: {
      manifest: { type: "string" },
      val: { type: "string" },
      out: { type: "string", default: "runs/latest" },
      "extractive-weight": { type: "string", default: "1.0" },
      "hidden-size": { type: "string", default: "16" },
      layers: { type: "string", default: "1" },
      seed: { type: "string", default: "0" },
      "base-lr": { type: "string", default: String(DEFAULT_SCHEDULE.baseLearningRate) },
      warmup: { type: "string", default: String(DEFAULT_SCHEDULE.warmupIterations) },
      accumulation: { type: "string", default: String(DEFAULT_SCHEDULE.gradientAccumulation) },
      "eval-interval": { type: "string", default: "0" },
      "iteration-cap": { type: "string", default: "0" },
    },
  });
  if (!values.manifest) {
    console.error("--manifest is required");
    return 1;
  }
  const result = train({
    manifest: loadManifest(values.manifest),
    schedule: {
      ...DEFAULT_SCHEDULE,
      warmupIterations: Number(values.warmup),
      gradientAccumulation: Number(values.accumulation),
      baseLearningRate: Number(values["base-lr"]),
    },
    weights: { wE: Number(values["extractive-weight"]) },
    shape: {
      hiddenSize: Number(values["hidden-size"]),
      layers: Number(values.layers),
      seed: Number(values.seed),
    },
    outDir: values.out as string,
    valPath: values.val,
    evalInterval: Number(values["eval-interval"]),
    iterationCap: Number(values["iteration-cap"]),
  });
  console.log(
    JSON.stringify(
      {
        stages: result.stages,
        firstLoss: result.firstLoss,
        lastLoss: result.lastLoss,
        bestValRouge1F1: result.bestValRouge1F1,
        log: result.logPath,
        checkpoint: result.checkpointPath,
      },
      null,
      2,
    ),
  );
  return 0;
}

process.exit(main());
