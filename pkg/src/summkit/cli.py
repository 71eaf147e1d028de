"""Command-line pipeline: parse, oracle, augment, build-experiment, rouge, evaluate.

Exit codes: 0 success, 1 usage error, 2 data error. Diagnostics go to
stderr; data goes to files or stdout. All randomness flows from --seed, so
re-running a subcommand over unchanged inputs is byte-identical.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__, augment as augment_mod, corpus, dataset, evaluate

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _ArgumentParser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the CLI contract reserves 2 for data
    # errors, so remap to 1.
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _cmd_parse(args: argparse.Namespace) -> int:
    in_dir = Path(args.in_dir)
    out_dir = Path(args.out_dir)
    files = corpus.iter_paper_files(in_dir)
    if not files:
        raise ValueError(f"no corpus files in {in_dir}")
    out_dir.mkdir(parents=True, exist_ok=True)
    for path in files:
        doc = corpus.parse_laysumm(corpus.read_document(path), path.stem)
        out_path = out_dir / f"{doc.id}.json"
        out_path.write_text(
            json.dumps(doc.to_dict(), ensure_ascii=False, indent=2) + "\n", encoding="utf-8"
        )
    if args.verbose:
        print(f"parsed {len(files)} document(s) into {out_dir}", file=sys.stderr)
    return EXIT_OK


def _cmd_oracle(args: argparse.Namespace) -> int:
    from .oracle import OracleConfig

    examples = dataset.load_jsonl(args.in_path)
    config = OracleConfig(max_sentences=args.max_sentences)
    labeled = [dataset.relabel(example, config) for example in examples]
    count = dataset.emit_jsonl(labeled, args.out_path)
    if args.verbose:
        print(f"labeled {count} record(s) into {args.out_path}", file=sys.stderr)
    return EXIT_OK


def _cmd_augment(args: argparse.Namespace) -> int:
    from .corpus import ComposedInput, Sentence
    from .metrics import normalize
    from .oracle import OracleConfig

    examples = dataset.load_jsonl(args.in_path)
    lexicon = augment_mod.load_lexicon(args.lexicon)
    table = augment_mod.load_embeddings(args.embeddings) if args.embeddings else None
    stopwords = (
        augment_mod.load_stopwords(args.stopwords)
        if args.stopwords
        else augment_mod.default_stopwords()
    )
    config = augment_mod.AugmentConfig(
        ratio=args.ratio, copies=args.copies, seed=args.seed, stopwords=stopwords
    )

    output: list[dataset.TrainingExample] = []
    for example in examples:
        texts = [dataset.strip_cls(s) for s in example.src_sentences]
        sentences = [
            Sentence(text=t, tokens=normalize(t), doc_index=i, origin="src")
            for i, t in enumerate(texts)
        ]
        token_count = sum(len(s.tokens) for s in sentences)
        composed = ComposedInput(
            sentences=sentences,
            token_count=token_count,
            truncated=False,
            token_limit=max(token_count, 1),
        )
        output.append(example)
        instances = augment_mod.augment(
            composed, example.tgt, lexicon, table, config, doc_id=example.id
        )
        for instance in instances:
            src = [
                (dataset.CLS_MARKER + s.text) if example.cls_prefixed else s.text
                for s in instance.document.sentences
            ]
            variant = dataset.TrainingExample(
                id=f"{example.id}#aug{instance.variant_index}",
                src_sentences=src,
                tgt=instance.summary,
                labels=None,
                cls_prefixed=example.cls_prefixed,
            )
            # Tokens changed, so stale labels would lie; recompute when the
            # source record was labeled.
            if example.labels is not None:
                variant = dataset.relabel(variant, OracleConfig())
            output.append(variant)
    count = dataset.emit_jsonl(output, args.out_path)
    if args.verbose:
        print(f"wrote {count} record(s) into {args.out_path}", file=sys.stderr)
    return EXIT_OK


def _cmd_build_experiment(args: argparse.Namespace) -> int:
    spec = dataset.experiment_by_name(args.name)
    paths = dataset.CorpusPaths(
        laysumm_dir=Path(args.laysumm),
        out_dir=Path(args.out_dir),
        scisumm_dir=Path(args.scisumm) if args.scisumm else None,
        lexicon_path=Path(args.lexicon) if args.lexicon else None,
        embeddings_path=Path(args.embeddings) if args.embeddings else None,
        stopwords_path=Path(args.stopwords) if args.stopwords else None,
    )
    config = dataset.BuildConfig(
        seed=args.seed,
        token_limit=args.token_limit,
        train_fraction=args.train_fraction,
        augment_ratio=args.ratio,
        augment_copies=args.copies,
    )
    result = dataset.build_experiment(spec, paths, config)
    summary = {
        "experiment": spec.name,
        "manifest": str(result.manifest_path),
        "train": {"path": str(result.train_path), "examples": result.train_count},
        "val": {"path": str(result.val_path), "examples": result.val_count},
        "stages": result.manifest.to_dict()["stages"],
    }
    if result.scisumm_path is not None:
        summary["scisumm"] = {"path": str(result.scisumm_path), "examples": result.scisumm_count}
    print(json.dumps(summary, indent=2))
    return EXIT_OK


def _cmd_rouge(args: argparse.Namespace) -> int:
    candidate = corpus.read_document(args.cand)
    reference = corpus.read_document(args.ref)
    try:
        scores = evaluate.score_pair(candidate, reference)
    except ValueError as exc:
        raise ValueError(f"{args.ref}: {exc}") from None
    print(json.dumps({m: s.as_dict() for m, s in scores.items()}, indent=2))
    return EXIT_OK


def _cmd_evaluate(args: argparse.Namespace) -> int:
    report = evaluate.evaluate_corpus(
        args.cand,
        args.ref,
        system=args.system,
        word_limit=args.word_limit,
        truncate=args.truncate,
    )
    if args.json_path:
        Path(args.json_path).write_text(
            json.dumps(report.to_dict(), indent=2) + "\n", encoding="utf-8"
        )
    print(evaluate.render_table([report]))
    if report.violations:
        print(
            f"{len(report.violations)} summary(ies) exceed {report.word_limit} words: "
            + ", ".join(f"{doc_id} ({count})" for doc_id, count in report.violations),
            file=sys.stderr,
        )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="summkit",
        description="Corpus preparation, oracle labeling, augmentation, and ROUGE evaluation.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--seed", type=int, default=0, help="seed for all randomness (default 0)")
    parser.add_argument(
        "--token-limit", type=int, default=corpus.DEFAULT_TOKEN_LIMIT,
        help="composed-input token budget (default 1024)",
    )
    parser.add_argument("--verbose", action="store_true", help="progress diagnostics on stderr")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="subcommand")

    p = subparsers.add_parser("parse", help="parse tagged paper files into JSON documents")
    p.add_argument("--in", dest="in_dir", required=True, help="corpus directory")
    p.add_argument("--out", dest="out_dir", required=True, help="output directory for <id>.json")
    p.set_defaults(handler=_cmd_parse)

    p = subparsers.add_parser("oracle", help="fill extractive labels in a composed-input JSONL")
    p.add_argument("--in", dest="in_path", required=True, help="input JSONL")
    p.add_argument("--out", dest="out_path", required=True, help="output JSONL")
    p.add_argument("--max-sentences", type=int, default=None, help="cap on selected sentences")
    p.set_defaults(handler=_cmd_oracle)

    p = subparsers.add_parser("augment", help="synonym-replacement variants of JSONL records")
    p.add_argument("--in", dest="in_path", required=True, help="input JSONL")
    p.add_argument("--out", dest="out_path", required=True, help="output JSONL")
    p.add_argument("--lexicon", required=True, help="TSV synonym lexicon")
    p.add_argument("--embeddings", default=None, help="text-format embedding table")
    p.add_argument("--stopwords", default=None, help="stopword list (default: bundled English)")
    p.add_argument("--ratio", type=float, default=1.0 / 9.0, help="replacement ratio (default 1/9)")
    p.add_argument("--copies", type=int, default=9, help="variants per record (default 9)")
    p.set_defaults(handler=_cmd_augment)

    p = subparsers.add_parser("build-experiment", help="emit datasets and manifest for one experiment")
    p.add_argument(
        "--name", required=True, choices=sorted(dataset.EXPERIMENTS),
        help="experiment name",
    )
    p.add_argument("--laysumm", required=True, help="target corpus directory")
    p.add_argument("--scisumm", default=None, help="auxiliary corpus directory (two-stage)")
    p.add_argument("--out", dest="out_dir", required=True, help="output directory")
    p.add_argument("--lexicon", default=None, help="TSV synonym lexicon (data-aug)")
    p.add_argument("--embeddings", default=None, help="embedding table (data-aug fallback)")
    p.add_argument("--stopwords", default=None, help="stopword list (data-aug)")
    p.add_argument("--train-fraction", type=float, default=0.9, help="train share (default 0.9)")
    p.add_argument("--ratio", type=float, default=1.0 / 9.0, help="augmentation ratio (default 1/9)")
    p.add_argument("--copies", type=int, default=9, help="augmentation copies (default 9)")
    p.set_defaults(handler=_cmd_build_experiment)

    p = subparsers.add_parser("rouge", help="score one candidate file against one reference file")
    p.add_argument("--cand", required=True, help="candidate text file")
    p.add_argument("--ref", required=True, help="reference text file")
    p.set_defaults(handler=_cmd_rouge)

    p = subparsers.add_parser("evaluate", help="score a candidate directory against references")
    p.add_argument("--cand", required=True, help="candidates directory")
    p.add_argument("--ref", required=True, help="references directory")
    p.add_argument("--system", default="system", help="row label in the report table")
    p.add_argument("--word-limit", type=int, default=evaluate.DEFAULT_WORD_LIMIT,
                   help="summary word limit (default 150)")
    p.add_argument("--truncate", action="store_true",
                   help="truncate candidates to the word limit before scoring")
    p.add_argument("--json", dest="json_path", default=None, help="also write a JSON report here")
    p.set_defaults(handler=_cmd_evaluate)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help exits 0, usage errors exit 1
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.handler(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
