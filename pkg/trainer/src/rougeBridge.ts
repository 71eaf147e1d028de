/** Validation scoring through the data toolkit's CLI, file-based.
 *
 * Candidates and references are written as one text file per document and
 * scored by `summkit evaluate --json`; only the corpus-mean Rouge1-F1 comes
 * back. The command is overridable via SUMMKIT_CMD (e.g. "summkit") and
 * defaults to "python3 -m summkit".
 */

import { spawnSync } from "node:child_process";
import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";

export interface ScoredPair {
  id: string;
  candidate: string;
  reference: string;
}

function evaluatorCommand(): string[] {
  const override = process.env.SUMMKIT_CMD;
  return override ? override.split(" ") : ["python3", "-m", "summkit"];
}

export function rouge1F1(pairs: ScoredPair[]): number {
  if (pairs.length === 0) throw new Error("nothing to score");
  const root = fs.mkdtempSync(path.join(os.tmpdir(), "rouge-bridge-"));
  try {
    const candDir = path.join(root, "cand");
    const refDir = path.join(root, "ref");
    fs.mkdirSync(candDir);
    fs.mkdirSync(refDir);
    for (const pair of pairs) {
      // candidates may be empty; the evaluator scores them as zero
      fs.writeFileSync(path.join(candDir, `${pair.id}.txt`), pair.candidate || " ");
      fs.writeFileSync(path.join(refDir, `${pair.id}.txt`), pair.reference);
    }
    const reportPath = path.join(root, "report.json");
    const [command, ...prefix] = evaluatorCommand();
    const result = spawnSync(
      command,
      [...prefix, "evaluate", "--cand", candDir, "--ref", refDir, "--json", reportPath],
      { encoding: "utf-8" },
    );
    if (result.error) {
      throw new Error(`failed to run evaluator: ${result.error.message}`);
    }
    if (result.status !== 0) {
      throw new Error(`evaluator exited ${result.status}: ${result.stderr}`);
    }
    const report = JSON.parse(fs.readFileSync(reportPath, "utf-8"));
    return report.means.rouge1.f1 as number;
  } finally {
    fs.rmSync(root, { recursive: true, force: true });
  }
}
