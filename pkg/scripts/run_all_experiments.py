#!/usr/bin/env python3
"""Build the full seven-experiment matrix over a corpus directory.

Each experiment lands in <out>/<name>/ with train.jsonl, val.jsonl and
manifest.json (plus scisumm.jsonl for the two-stage setting).
"""

import argparse
from pathlib import Path

from summkit.dataset import EXPERIMENTS, BuildConfig, CorpusPaths, build_experiment


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--laysumm", required=True, help="target corpus directory")
    parser.add_argument("--scisumm", default=None, help="auxiliary corpus (two-stage)")
    parser.add_argument("--lexicon", default=None, help="synonym lexicon (data-aug)")
    parser.add_argument("--embeddings", default=None, help="embedding table (data-aug)")
    parser.add_argument("--out", default="experiments", help="output root")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--token-limit", type=int, default=1024)
    args = parser.parse_args()

    config = BuildConfig(seed=args.seed, token_limit=args.token_limit)
    for name, spec in sorted(EXPERIMENTS.items()):
        if spec.two_stage and args.scisumm is None:
            print(f"{name}: skipped (needs --scisumm)")
            continue
        if spec.augmentation and args.lexicon is None:
            print(f"{name}: skipped (needs --lexicon)")
            continue
        paths = CorpusPaths(
            laysumm_dir=Path(args.laysumm),
            out_dir=Path(args.out) / name,
            scisumm_dir=Path(args.scisumm) if args.scisumm else None,
            lexicon_path=Path(args.lexicon) if args.lexicon else None,
            embeddings_path=Path(args.embeddings) if args.embeddings else None,
        )
        result = build_experiment(spec, paths, config)
        stages = ", ".join(f"{s.name}({s.iterations})" for s in result.manifest.stages)
        print(
            f"{name}: train={result.train_count} val={result.val_count} stages=[{stages}]"
        )


if __name__ == "__main__":
    main()
