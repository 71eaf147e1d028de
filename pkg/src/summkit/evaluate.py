"""Corpus scoring against references and the experiment-table report.

Candidates and references are one UTF-8 text file per document with matching
stems. The report carries per-document and corpus-mean ROUGE-1/2/L scores
plus word-limit violations, and renders as JSON or an aligned text table.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .corpus import read_document
from .metrics import RougeScore, mean_scores, normalize, rouge_l, rouge_n

log = logging.getLogger(__name__)

METRICS = ("rouge1", "rouge2", "rougeL")
DEFAULT_WORD_LIMIT = 150

HEADLINE_COLUMNS = (
    "Rouge1-F1",
    "Rouge1-Recall",
    "Rouge2-F1",
    "Rouge2-Recall",
    "RougeL-F1",
    "RougeL-Recall",
)
PRECISION_COLUMNS = ("Rouge1-Precision", "Rouge2-Precision", "RougeL-Precision")

_COLUMN_FIELDS = {
    "Rouge1-F1": ("rouge1", "f1"),
    "Rouge1-Recall": ("rouge1", "recall"),
    "Rouge1-Precision": ("rouge1", "precision"),
    "Rouge2-F1": ("rouge2", "f1"),
    "Rouge2-Recall": ("rouge2", "recall"),
    "Rouge2-Precision": ("rouge2", "precision"),
    "RougeL-F1": ("rougeL", "f1"),
    "RougeL-Recall": ("rougeL", "recall"),
    "RougeL-Precision": ("rougeL", "precision"),
}


def score_pair(candidate: str, reference: str) -> dict[str, RougeScore]:
    """Nine scores (ROUGE-1/2/L x P/R/F1) for one candidate/reference pair."""
    reference_tokens = normalize(reference)
    if not reference_tokens:
        raise ValueError("empty reference")
    candidate_tokens = normalize(candidate)
    return {
        "rouge1": rouge_n(candidate_tokens, reference_tokens, 1),
        "rouge2": rouge_n(candidate_tokens, reference_tokens, 2),
        "rougeL": rouge_l(candidate_tokens, reference_tokens),
    }


def check_word_limit(candidate: str, limit: int = DEFAULT_WORD_LIMIT) -> tuple[int, bool]:
    """Whitespace word count and whether it is within the limit (inclusive)."""
    count = len(candidate.split())
    return count, count <= limit


@dataclass
class EvalReport:
    system: str
    means: dict[str, RougeScore]
    per_doc: dict[str, dict[str, RougeScore]]
    violations: list[tuple[str, int]]
    word_limit: int = DEFAULT_WORD_LIMIT
    extra_candidates: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "system": self.system,
            "word_limit": self.word_limit,
            "means": {m: s.as_dict() for m, s in self.means.items()},
            "per_doc": {
                doc_id: {m: s.as_dict() for m, s in scores.items()}
                for doc_id, scores in self.per_doc.items()
            },
            "violations": [[doc_id, count] for doc_id, count in self.violations],
            "extra_candidates": list(self.extra_candidates),
        }


def evaluate_corpus(
    candidates_dir: str | Path,
    references_dir: str | Path,
    *,
    system: str = "system",
    word_limit: int = DEFAULT_WORD_LIMIT,
    truncate: bool = False,
) -> EvalReport:
    """Score every reference's candidate; stable ordering by document id.

    A reference without a candidate is an error; spare candidates only warn.
    With ``truncate`` the candidate is cut to the first ``word_limit`` words
    before scoring (violations are still recorded against the full text).
    """
    references = {p.stem: p for p in Path(references_dir).glob("*.txt")}
    if not references:
        raise ValueError(f"no reference files in {references_dir}")
    candidates = {p.stem: p for p in Path(candidates_dir).glob("*.txt")}
    extra = sorted(set(candidates) - set(references))
    if extra:
        log.warning("ignoring %d candidate(s) without references: %s", len(extra), ", ".join(extra))

    per_doc: dict[str, dict[str, RougeScore]] = {}
    violations: list[tuple[str, int]] = []
    for doc_id in sorted(references):
        if doc_id not in candidates:
            raise ValueError(f"missing candidate for {doc_id}")
        reference = read_document(references[doc_id])
        if not normalize(reference):
            raise ValueError(f"empty reference: {doc_id}")
        candidate = read_document(candidates[doc_id])
        count, ok = check_word_limit(candidate, word_limit)
        if not ok:
            violations.append((doc_id, count))
        if truncate:
            candidate = " ".join(candidate.split()[:word_limit])
        per_doc[doc_id] = score_pair(candidate, reference)

    means = {m: mean_scores([per_doc[d][m] for d in per_doc]) for m in METRICS}
    return EvalReport(
        system=system,
        means=means,
        per_doc=per_doc,
        violations=violations,
        word_limit=word_limit,
        extra_candidates=extra,
    )


def render_table(reports: Sequence[EvalReport]) -> str:
    """Aligned text table of corpus means, one row per system."""
    columns = ["Model", *HEADLINE_COLUMNS, *PRECISION_COLUMNS]
    rows = [columns]
    for report in reports:
        row = [report.system]
        for column in columns[1:]:
            metric, stat = _COLUMN_FIELDS[column]
            row.append(f"{getattr(report.means[metric], stat):.4f}")
        rows.append(row)
    widths = [max(len(row[i]) for row in rows) for i in range(len(columns))]
    lines = []
    for idx, row in enumerate(rows):
        lines.append("  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip())
        if idx == 0:
            lines.append("  ".join("-" * width for width in widths))
    return "\n".join(lines)
