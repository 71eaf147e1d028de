#!/usr/bin/env python3
"""Parse a tagged corpus and emit composed-input JSONL (labels left null).

The output feeds the standalone `summkit oracle` and `summkit augment`
subcommands; `summkit build-experiment` performs all of this in one step.
"""

import argparse

from summkit.corpus import CompositionStrategy, compose_input, is_outlier, load_laysumm_dir
from summkit.dataset import CLS_MARKER, TrainingExample, emit_jsonl


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--in", dest="in_dir", required=True, help="tagged corpus directory")
    parser.add_argument("--out", dest="out_path", required=True, help="output JSONL path")
    parser.add_argument(
        "--strategy", default="abs-intro-con",
        choices=[s.value for s in CompositionStrategy],
    )
    parser.add_argument("--token-limit", type=int, default=1024)
    parser.add_argument("--cls", action="store_true", help="prefix every sentence with [CLS]")
    parser.add_argument("--keep-outliers", action="store_true")
    args = parser.parse_args()

    strategy = CompositionStrategy(args.strategy)
    examples = []
    skipped = 0
    for doc, gold in load_laysumm_dir(args.in_dir):
        if is_outlier(doc):
            skipped += 1
            continue
        composed = compose_input(doc, strategy, args.token_limit)
        src = [
            (CLS_MARKER + s.text) if args.cls else s.text for s in composed.sentences
        ]
        examples.append(
            TrainingExample(
                id=doc.id, src_sentences=src, tgt=gold, labels=None, cls_prefixed=args.cls
            )
        )
    count = emit_jsonl(examples, args.out_path)
    print(f"wrote {count} record(s) to {args.out_path} ({skipped} outlier(s) skipped)")


if __name__ == "__main__":
    main()
