#!/usr/bin/env python3
"""Generate a small demo corpus for walking the pipeline end to end.

Writes a tagged-paper corpus (incl. two outliers), an auxiliary
abstract+citations corpus, a toy synonym lexicon, and a toy embedding table.
"""

import argparse
import random
from pathlib import Path

TOPICS = [
    ("membranes", "filtration", "fouling"),
    ("catalysts", "conversion", "selectivity"),
    ("sensors", "calibration", "drift"),
    ("alloys", "fatigue", "cracking"),
    ("polymers", "curing", "stiffness"),
    ("turbines", "efficiency", "vibration"),
    ("aerosols", "dispersion", "deposition"),
    ("enzymes", "activity", "inhibition"),
    ("circuits", "latency", "leakage"),
    ("antennas", "bandwidth", "interference"),
]


def paper_text(noun, process, failure, n, full=True):
    lines = ["TITLE", "", "PARAGRAPH", "", f"A study of {process} in industrial {noun}", ""]
    if full or n % 2 == 0:
        lines += [
            "SECTION", "", "Abstract", "",
            "PARAGRAPH", "",
            f"We study {process} in industrial {noun}. "
            f"Higher {process} rates reduce {failure} substantially. "
            f"Field trials confirm the laboratory findings.",
            "",
        ]
    if full or n % 2 == 1:
        lines += [
            "SECTION", "", "Introduction", "",
            "PARAGRAPH", "",
            f"Industrial {noun} suffer from {failure} during operation. "
            f"Understanding {process} promises practical remedies.",
            "",
            "PARAGRAPH", "",
            f"We survey {len(TOPICS)} installations and model {process} directly.",
            "",
        ]
    if n % 3 != 0:
        lines += [
            "SECTION", "", "Conclusion", "",
            "PARAGRAPH", "",
            f"Controlling {process} mitigates {failure} in {noun}.",
            "",
        ]
    return "\n".join(lines)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="demo", help="output directory (default: demo/)")
    parser.add_argument("--docs", type=int, default=10, help="number of papers (default 10)")
    args = parser.parse_args()

    root = Path(args.out)
    laysumm = root / "laysumm"
    scisumm = root / "scisumm"
    laysumm.mkdir(parents=True, exist_ok=True)
    scisumm.mkdir(parents=True, exist_ok=True)

    rng = random.Random(0)
    for n in range(args.docs):
        noun, process, failure = TOPICS[n % len(TOPICS)]
        # make two defective papers (missing Abstract or Introduction)
        full = n not in (3, 7)
        (laysumm / f"demo{n:02d}.txt").write_text(
            paper_text(noun, process, failure, n, full=full), encoding="utf-8"
        )
        (laysumm / f"demo{n:02d}.summary.txt").write_text(
            f"Higher {process} rates reduce {failure} in industrial {noun}.",
            encoding="utf-8",
        )

    for n in range(args.docs):
        noun, process, failure = TOPICS[(n + 3) % len(TOPICS)]
        (scisumm / f"aux{n:02d}.abstract.txt").write_text(
            f"This paper models {process} for {noun}. "
            f"The model predicts {failure} onset accurately.",
            encoding="utf-8",
        )
        (scisumm / f"aux{n:02d}.citations.txt").write_text(
            f"The {process} model was reused for {noun} worldwide.\n"
            f"Later studies confirmed the {failure} predictions.\n",
            encoding="utf-8",
        )
        (scisumm / f"aux{n:02d}.summary.txt").write_text(
            f"A {process} model predicts {failure} onset in {noun}.",
            encoding="utf-8",
        )

    (root / "lexicon.tsv").write_text(
        "study\texamine\nreduce\tlower\nhigher\tgreater\n"
        "industrial\tcommercial\nfield\tsite\nmodel\tsimulate\n"
        "practical\tusable\nconfirm\tverify\n",
        encoding="utf-8",
    )
    vocab = sorted({w for t in TOPICS for w in t})
    lines = []
    for i, word in enumerate(vocab):
        vec = [f"{rng.uniform(-1, 1):.3f}" for _ in range(8)]
        lines.append(word + " " + " ".join(vec))
    (root / "embeddings.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"demo corpus written under {root}/")


if __name__ == "__main__":
    main()
