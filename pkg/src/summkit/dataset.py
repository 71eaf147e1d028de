"""Train/validation assembly: splits, labeled examples, JSONL emission, and
the seven-experiment matrix with its two-stage fine-tuning manifest.

JSONL schema (one object per line, exact field order):
    {"id": str, "src": [str, ...], "tgt": str, "labels": [0|1, ...] | null}

Manifest schema: {"stages": [{"name": str, "path": str, "iterations": int}]}
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Sequence

from .augment import (
    AugmentConfig,
    EmbeddingTable,
    SynonymLexicon,
    augment,
    default_stopwords,
    load_embeddings,
    load_lexicon,
    load_stopwords,
)
from .corpus import (
    ComposedInput,
    CompositionStrategy,
    compose_input,
    compose_scisumm,
    is_outlier,
    load_laysumm_dir,
    load_scisumm_dir,
)
from .metrics import normalize
from .oracle import OracleConfig, OracleResult, greedy_oracle

CLS_MARKER = "[CLS] "
STAGE1_ITERATIONS = 20000
STAGE2_ITERATIONS = 6000
JSONL_FIELDS = ("id", "src", "tgt", "labels")


@dataclass
class TrainingExample:
    id: str
    src_sentences: list[str]
    tgt: str
    labels: list[int] | None
    cls_prefixed: bool = False

    def __post_init__(self) -> None:
        if not self.tgt:
            raise ValueError(f"empty target summary for {self.id}")
        if self.labels is not None:
            if len(self.labels) != len(self.src_sentences):
                raise ValueError(
                    f"{self.id}: {len(self.labels)} labels for {len(self.src_sentences)} sentences"
                )
            if any(label not in (0, 1) for label in self.labels):
                raise ValueError(f"{self.id}: labels must be 0 or 1")
        if self.cls_prefixed and not all(s.startswith(CLS_MARKER) for s in self.src_sentences):
            raise ValueError(f"{self.id}: cls_prefixed requires every src sentence to carry {CLS_MARKER!r}")


def strip_cls(sentence: str) -> str:
    return sentence[len(CLS_MARKER):] if sentence.startswith(CLS_MARKER) else sentence


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float = 0.9
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError(f"train_fraction must be in (0, 1), got {self.train_fraction}")


def round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def split(ids: Sequence[str], spec: SplitSpec) -> tuple[list[str], list[str]]:
    """Deterministic 90/10-style partition; insensitive to input order."""
    ids = list(ids)
    if not ids:
        raise ValueError("no ids to split")
    if len(set(ids)) != len(ids):
        seen: set[str] = set()
        dupes = sorted({i for i in ids if i in seen or seen.add(i)})
        raise ValueError(f"duplicate ids: {', '.join(dupes)}")
    order = sorted(ids)
    random.Random(spec.seed).shuffle(order)
    n_train = round_half_up(spec.train_fraction * len(order))
    return sorted(order[:n_train]), sorted(order[n_train:])


def build_example(
    composed: ComposedInput,
    gold: str,
    oracle_result: OracleResult,
    cls_prefixed: bool,
    *,
    example_id: str,
) -> TrainingExample:
    """Pair composed sentences with their oracle labels, optionally [CLS]-prefixed."""
    if len(oracle_result.labels) != len(composed.sentences):
        raise ValueError(
            f"{example_id}: {len(oracle_result.labels)} labels for "
            f"{len(composed.sentences)} sentences"
        )
    src = [(CLS_MARKER + s.text) if cls_prefixed else s.text for s in composed.sentences]
    return TrainingExample(
        id=example_id,
        src_sentences=src,
        tgt=gold,
        labels=list(oracle_result.labels),
        cls_prefixed=cls_prefixed,
    )


def _encode(example: TrainingExample) -> str:
    record = {
        "id": example.id,
        "src": list(example.src_sentences),
        "tgt": example.tgt,
        "labels": list(example.labels) if example.labels is not None else None,
    }
    return json.dumps(record, ensure_ascii=False)


def _decode(line: str, lineno: int, source: str = "<jsonl>") -> TrainingExample:
    try:
        record = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{source}:{lineno}: invalid JSON: {exc}") from None
    if not isinstance(record, dict) or set(record) != set(JSONL_FIELDS):
        raise ValueError(f"{source}:{lineno}: expected exactly the fields {list(JSONL_FIELDS)}")
    src = record["src"]
    if not isinstance(src, list) or not all(isinstance(s, str) for s in src):
        raise ValueError(f"{source}:{lineno}: src must be a list of strings")
    cls_prefixed = bool(src) and all(s.startswith(CLS_MARKER) for s in src)
    try:
        return TrainingExample(
            id=record["id"],
            src_sentences=src,
            tgt=record["tgt"],
            labels=record["labels"],
            cls_prefixed=cls_prefixed,
        )
    except (TypeError, ValueError) as exc:
        raise ValueError(f"{source}:{lineno}: {exc}") from None


def emit_jsonl(examples: Iterable[TrainingExample], path: str | Path) -> int:
    """Write one record per example; returns the number of lines written."""
    path = Path(path)
    count = 0
    with path.open("w", encoding="utf-8") as fh:
        for example in examples:
            fh.write(_encode(example) + "\n")
            count += 1
    return count


def load_jsonl(path: str | Path) -> list[TrainingExample]:
    path = Path(path)
    examples: list[TrainingExample] = []
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if line.strip():
                examples.append(_decode(line, lineno, str(path)))
    return examples


@dataclass(frozen=True)
class ExperimentSpec:
    name: str
    strategy: CompositionStrategy
    augmentation: bool = False
    two_stage: bool = False
    multi_label: bool = False


EXPERIMENTS: dict[str, ExperimentSpec] = {
    spec.name: spec
    for spec in (
        ExperimentSpec("abs", CompositionStrategy.ABS),
        ExperimentSpec("abs-intro", CompositionStrategy.ABS_INTRO_FIRST),
        ExperimentSpec("abs-intro-all", CompositionStrategy.ABS_INTRO_ALL),
        ExperimentSpec("abs-intro-con", CompositionStrategy.ABS_INTRO_CON),
        ExperimentSpec("data-aug", CompositionStrategy.ABS_INTRO_CON, augmentation=True),
        ExperimentSpec("two-stage", CompositionStrategy.ABS_INTRO_CON, two_stage=True),
        ExperimentSpec("multi-label", CompositionStrategy.ABS_INTRO_CON, multi_label=True),
    )
}


def experiment_by_name(name: str) -> ExperimentSpec:
    try:
        return EXPERIMENTS[name]
    except KeyError:
        raise ValueError(
            f"unknown experiment {name!r}; expected one of: {', '.join(sorted(EXPERIMENTS))}"
        ) from None


@dataclass(frozen=True)
class Stage:
    name: str
    path: str
    iterations: int

    def __post_init__(self) -> None:
        if self.iterations <= 0:
            raise ValueError(f"stage {self.name}: iterations must be positive")


@dataclass
class StageManifest:
    stages: list[Stage]

    def to_dict(self) -> dict:
        return {"stages": [{"name": s.name, "path": s.path, "iterations": s.iterations} for s in self.stages]}

    def write(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + "\n", encoding="utf-8")


def load_manifest(path: str | Path) -> StageManifest:
    record = json.loads(Path(path).read_text("utf-8"))
    return StageManifest(
        stages=[Stage(s["name"], s["path"], s["iterations"]) for s in record["stages"]]
    )


@dataclass(frozen=True)
class CorpusPaths:
    laysumm_dir: Path
    out_dir: Path
    scisumm_dir: Path | None = None
    lexicon_path: Path | None = None
    embeddings_path: Path | None = None
    stopwords_path: Path | None = None


@dataclass(frozen=True)
class BuildConfig:
    seed: int = 0
    token_limit: int = 1024
    train_fraction: float = 0.9
    augment_ratio: float = 1.0 / 9.0
    augment_copies: int = 9
    oracle_max_sentences: int | None = None
    stage1_iterations: int = STAGE1_ITERATIONS
    stage2_iterations: int = STAGE2_ITERATIONS


@dataclass
class BuildResult:
    manifest: StageManifest
    manifest_path: Path
    train_path: Path
    val_path: Path
    train_count: int
    val_count: int
    scisumm_path: Path | None = None
    scisumm_count: int = 0


def _labeled_example(
    composed: ComposedInput,
    gold: str,
    example_id: str,
    cls_prefixed: bool,
    oracle_config: OracleConfig,
) -> TrainingExample:
    try:
        result = greedy_oracle([s.tokens for s in composed.sentences], normalize(gold), oracle_config)
    except ValueError as exc:
        raise ValueError(f"{example_id}: {exc}") from None
    return build_example(composed, gold, result, cls_prefixed, example_id=example_id)


def build_experiment(spec: ExperimentSpec, paths: CorpusPaths, config: BuildConfig) -> BuildResult:
    """Run the full data pipeline for one experiment.

    parse -> outlier filter -> split on original ids -> compose(strategy)
    -> augment (train side only, when enabled) -> oracle labels
    -> build_example -> emit. Two-stage experiments prepend a stage over the
    auxiliary corpus with the larger iteration budget.
    """
    if spec.two_stage and paths.scisumm_dir is None:
        raise ValueError(f"{spec.name}: missing auxiliary corpus directory (--scisumm)")
    if spec.augmentation and paths.lexicon_path is None:
        raise ValueError(f"{spec.name}: missing synonym lexicon (--lexicon)")

    documents = load_laysumm_dir(paths.laysumm_dir)
    survivors = {doc.id: (doc, gold) for doc, gold in documents if not is_outlier(doc)}
    if not survivors:
        raise ValueError(f"{spec.name}: every document in {paths.laysumm_dir} is an outlier")

    train_ids, val_ids = split(
        sorted(survivors), SplitSpec(train_fraction=config.train_fraction, seed=config.seed)
    )
    oracle_config = OracleConfig(max_sentences=config.oracle_max_sentences)

    lexicon: SynonymLexicon | None = None
    table: EmbeddingTable | None = None
    stopwords = default_stopwords()
    if spec.augmentation:
        assert paths.lexicon_path is not None
        lexicon = load_lexicon(paths.lexicon_path)
        if paths.embeddings_path is not None:
            table = load_embeddings(paths.embeddings_path)
        if paths.stopwords_path is not None:
            stopwords = load_stopwords(paths.stopwords_path)

    def examples_for(doc_id: str, augment_side: bool) -> list[TrainingExample]:
        doc, gold = survivors[doc_id]
        composed = compose_input(doc, spec.strategy, config.token_limit)
        examples = [
            _labeled_example(composed, gold, doc_id, spec.multi_label, oracle_config)
        ]
        if augment_side and spec.augmentation:
            assert lexicon is not None
            instances = augment(
                composed,
                gold,
                lexicon,
                table,
                AugmentConfig(
                    ratio=config.augment_ratio,
                    copies=config.augment_copies,
                    seed=config.seed,
                    stopwords=stopwords,
                ),
                doc_id=doc_id,
            )
            for instance in instances:
                examples.append(
                    _labeled_example(
                        instance.document,
                        gold,
                        f"{doc_id}#aug{instance.variant_index}",
                        spec.multi_label,
                        oracle_config,
                    )
                )
        return examples

    out_dir = Path(paths.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    train_examples = [ex for doc_id in train_ids for ex in examples_for(doc_id, augment_side=True)]
    val_examples = [ex for doc_id in val_ids for ex in examples_for(doc_id, augment_side=False)]
    train_path = out_dir / "train.jsonl"
    val_path = out_dir / "val.jsonl"
    train_count = emit_jsonl(train_examples, train_path)
    val_count = emit_jsonl(val_examples, val_path)

    stages: list[Stage] = []
    scisumm_path: Path | None = None
    scisumm_count = 0
    if spec.two_stage:
        assert paths.scisumm_dir is not None
        samples = load_scisumm_dir(paths.scisumm_dir)
        scisumm_examples = [
            _labeled_example(
                compose_scisumm(sample, config.token_limit),
                sample.gold_summary,
                sample.id,
                spec.multi_label,
                oracle_config,
            )
            for sample in samples
        ]
        scisumm_path = out_dir / "scisumm.jsonl"
        scisumm_count = emit_jsonl(scisumm_examples, scisumm_path)
        stages.append(Stage("scisumm", str(scisumm_path), config.stage1_iterations))
    stages.append(Stage("laysumm", str(train_path), config.stage2_iterations))

    manifest = StageManifest(stages=stages)
    manifest_path = out_dir / "manifest.json"
    manifest.write(manifest_path)
    return BuildResult(
        manifest=manifest,
        manifest_path=manifest_path,
        train_path=train_path,
        val_path=val_path,
        train_count=train_count,
        val_count=val_count,
        scisumm_path=scisumm_path,
        scisumm_count=scisumm_count,
    )


def relabel(example: TrainingExample, oracle_config: OracleConfig = OracleConfig()) -> TrainingExample:
    """Recompute oracle labels for a JSONL record from its src/tgt fields."""
    tokens = [normalize(strip_cls(s)) for s in example.src_sentences]
    try:
        result = greedy_oracle(tokens, normalize(example.tgt), oracle_config)
    except ValueError as exc:
        raise ValueError(f"{example.id}: {exc}") from None
    return replace(example, labels=result.labels)
