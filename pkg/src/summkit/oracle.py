"""Greedy extractive label generation against an abstractive gold summary.

Sentences are added one at a time, each step picking the sentence whose
inclusion maximizes the mean of ROUGE-1 F1 and ROUGE-2 F1 between the
concatenated selection (in document order) and the gold summary. Selection
stops when no candidate strictly improves the objective.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .metrics import rouge_n

OBJECTIVE = "mean(ROUGE-1 F1, ROUGE-2 F1)"


@dataclass(frozen=True)
class OracleConfig:
    max_sentences: int | None = None
    objective: str = OBJECTIVE

    def __post_init__(self) -> None:
        if self.max_sentences is not None and self.max_sentences < 1:
            raise ValueError(f"max_sentences must be >= 1, got {self.max_sentences}")


@dataclass
class OracleResult:
    labels: list[int]
    selection_order: list[int]
    step_scores: list[float]


def objective_score(candidate: Sequence[str], gold: Sequence[str]) -> float:
    return (rouge_n(candidate, gold, 1).f1 + rouge_n(candidate, gold, 2).f1) / 2.0


def greedy_oracle(
    sentences: Sequence[Sequence[str]],
    gold: Sequence[str],
    config: OracleConfig = OracleConfig(),
) -> OracleResult:
    """Binary per-sentence labels marking the greedy ROUGE-maximizing subset.

    `sentences` holds one normalized token list per sentence; `gold` is the
    normalized gold summary. Candidates are always scored as the
    concatenation of the selected sentences in document order, regardless of
    the order they were picked in. Ties break toward the lowest index.
    """
    if not sentences:
        raise ValueError("no sentences to label")
    if not gold:
        raise ValueError("empty gold summary")

    chosen: set[int] = set()
    selection_order: list[int] = []
    step_scores: list[float] = []
    current = 0.0
    limit = config.max_sentences if config.max_sentences is not None else len(sentences)

    while len(chosen) < limit:
        best_index = -1
        best_score = current
        for i in range(len(sentences)):
            if i in chosen:
                continue
            trial = sorted(chosen | {i})
            candidate = [token for j in trial for token in sentences[j]]
            score = objective_score(candidate, gold)
            if score > best_score:  # strict: earlier index wins ties
                best_score = score
                best_index = i
        if best_index < 0:
            break
        chosen.add(best_index)
        selection_order.append(best_index)
        step_scores.append(best_score)
        current = best_score

    labels = [1 if i in chosen else 0 for i in range(len(sentences))]
    return OracleResult(labels=labels, selection_order=selection_order, step_scores=step_scores)
