"""Data-side toolkit for lay summarization experiments.

Parses tagged scientific-paper corpora, builds greedy extractive oracle
labels, performs synonym-replacement augmentation, assembles train/validation
JSONL datasets, and scores summaries with ROUGE-1/2/L.
"""

__version__ = "0.1.0"

from .corpus import (
    ComposedInput,
    CompositionStrategy,
    PaperDocument,
    ScisummSample,
    Section,
    Sentence,
    compose_input,
    is_outlier,
    parse_laysumm,
    parse_scisumm,
    split_sentences,
)
from .metrics import RougeScore, mean_scores, normalize, rouge_l, rouge_n
from .oracle import OracleConfig, OracleResult, greedy_oracle

__all__ = [
    "ComposedInput",
    "CompositionStrategy",
    "OracleConfig",
    "OracleResult",
    "PaperDocument",
    "RougeScore",
    "ScisummSample",
    "Section",
    "Sentence",
    "compose_input",
    "greedy_oracle",
    "is_outlier",
    "mean_scores",
    "normalize",
    "parse_laysumm",
    "parse_scisumm",
    "rouge_l",
    "rouge_n",
    "split_sentences",
]
