/** Training schedule: linear warmup then inverse-square-root decay. */

import type { ScheduleConfig } from "./types.js";

export const STAGE1_ITERATIONS = 20000;
export const STAGE2_ITERATIONS = 6000;

export const DEFAULT_SCHEDULE: ScheduleConfig = {
  warmupIterations: 1000,
  totalIterations: STAGE2_ITERATIONS,
  batchSize: 1,
  gradientAccumulation: 10,
  baseLearningRate: 0.5,
};

/** Learning rate at a 1-based iteration: peak baseLearningRate at the end
 * of warmup, decaying as 1/sqrt(iteration) afterwards. */
export function learningRate(iteration: number, schedule: ScheduleConfig): number {
  if (iteration < 1) throw new Error(`iteration must be >= 1, got ${iteration}`);
  const { warmupIterations: warmup, baseLearningRate: base } = schedule;
  return base * Math.min(iteration / warmup, Math.sqrt(warmup / iteration));
}

export function validateSchedule(schedule: ScheduleConfig): void {
  const fields: Array<[string, number]> = [
    ["warmupIterations", schedule.warmupIterations],
    ["totalIterations", schedule.totalIterations],
    ["batchSize", schedule.batchSize],
    ["gradientAccumulation", schedule.gradientAccumulation],
  ];
  for (const [name, value] of fields) {
    if (!Number.isInteger(value) || value <= 0) {
      throw new Error(`${name} must be a positive integer, got ${value}`);
    }
  }
  if (schedule.baseLearningRate <= 0) {
    throw new Error(`baseLearningRate must be positive, got ${schedule.baseLearningRate}`);
  }
}
