"""ROUGE-1/2/L with precision, recall, and F1 over normalized token sequences.

Candidate and reference are treated as flat token sequences (sentence-level
LCS for ROUGE-L). No stemming, no stopword removal; counting is clipped
multiset n-gram overlap.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

# Alphanumeric runs; underscore is a separator like any other punctuation.
TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


@dataclass(frozen=True)
class RougeScore:
    precision: float
    recall: float
    f1: float

    @classmethod
    def from_counts(cls, overlap: float, candidate_count: int, reference_count: int) -> "RougeScore":
        precision = overlap / candidate_count if candidate_count > 0 else 0.0
        recall = overlap / reference_count if reference_count > 0 else 0.0
        return cls(precision, recall, f_score(precision, recall))

    def as_dict(self) -> dict[str, float]:
        return {"precision": self.precision, "recall": self.recall, "f1": self.f1}


def f_score(precision: float, recall: float) -> float:
    """Harmonic mean of precision and recall (beta = 1); 0.0 when both vanish."""
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def normalize(text: str) -> list[str]:
    """Lowercase and split on any run of characters that are not letters or digits.

    Idempotent: normalizing the space-joined output yields the same tokens.
    """
    return TOKEN_RE.findall(text.lower())


def ngram_counts(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def rouge_n(candidate: Sequence[str], reference: Sequence[str], n: int) -> RougeScore:
    """Clipped n-gram overlap score, n in {1, 2}.

    Empty candidate scores all zeros; an empty reference is an error because
    recall would be undefined.
    """
    if n not in (1, 2):
        raise ValueError(f"unsupported n-gram order: {n}")
    if not reference:
        raise ValueError("empty reference")
    cand = ngram_counts(candidate, n)
    ref = ngram_counts(reference, n)
    overlap = sum((cand & ref).values())
    return RougeScore.from_counts(overlap, sum(cand.values()), sum(ref.values()))


def lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    """Longest common subsequence length, O(len(a) * len(b)) dynamic program."""
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b, start=1):
            if x == y:
                cur.append(prev[j - 1] + 1)
            else:
                cur.append(max(prev[j], cur[j - 1]))
        prev = cur
    return prev[-1]


def rouge_l(candidate: Sequence[str], reference: Sequence[str]) -> RougeScore:
    """LCS-based score: P = LCS/|candidate|, R = LCS/|reference|, F1 harmonic."""
    if not reference:
        raise ValueError("empty reference")
    lcs = lcs_length(candidate, reference)
    return RougeScore.from_counts(lcs, len(candidate), len(reference))


def mean_scores(scores: Sequence[RougeScore]) -> RougeScore:
    """Arithmetic mean per field; F1 is averaged directly, not recomputed."""
    if not scores:
        raise ValueError("cannot average an empty score list")
    k = len(scores)
    return RougeScore(
        sum(s.precision for s in scores) / k,
        sum(s.recall for s in scores) / k,
        sum(s.f1 for s in scores) / k,
    )
