"""Synonym-replacement data augmentation with embedding-based fallback.

Each variant replaces a fixed fraction of the eligible tokens (not stopwords,
not numeric) with a lexicon synonym, falling back to the cosine-nearest
embedding neighbor; fallback pairs are added to the in-memory lexicon for
reuse. The gold summary is carried over unchanged.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

import numpy as np

from .corpus import ComposedInput, Sentence
from .metrics import TOKEN_RE, normalize


@dataclass
class SynonymLexicon:
    """word -> synonym map; keys and values lowercase, never self-mapping."""

    entries: dict[str, str] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, word: str) -> bool:
        return word in self.entries

    def get(self, word: str) -> str | None:
        return self.entries.get(word)

    def add(self, word: str, synonym: str) -> None:
        word, synonym = word.lower(), synonym.lower()
        if word == synonym:
            raise ValueError(f"self-mapping entry: {word!r}")
        self.entries[word] = synonym


def load_lexicon(path: str | Path) -> SynonymLexicon:
    """Load a TSV lexicon (``word<TAB>synonym`` per line, lowercase)."""
    lexicon = SynonymLexicon()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            row = line.rstrip("\n")
            if not row.strip():
                continue
            fields = row.split("\t")
            if len(fields) != 2 or not all(len(f.split()) == 1 for f in fields):
                raise ValueError(f"{path}:{lineno}: malformed lexicon row {row!r}")
            word, synonym = (f.strip().lower() for f in fields)
            if word == synonym:
                raise ValueError(f"{path}:{lineno}: word maps to itself: {word!r}")
            lexicon.entries[word] = synonym
    return lexicon


@dataclass
class EmbeddingTable:
    dimension: int
    vectors: dict[str, np.ndarray]

    def __contains__(self, word: str) -> bool:
        return word in self.vectors

    def __len__(self) -> int:
        return len(self.vectors)


def load_embeddings(path: str | Path) -> EmbeddingTable:
    """Load text-format embeddings: one ``word v1 v2 ... vD`` line per word."""
    vectors: dict[str, np.ndarray] = {}
    dimension: int | None = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            word, components = parts[0].lower(), parts[1:]
            if dimension is None:
                dimension = len(components)
                if dimension == 0:
                    raise ValueError(f"{path}:{lineno}: no vector components")
            if len(components) != dimension:
                raise ValueError(
                    f"{path}:{lineno}: expected {dimension} components, got {len(components)}"
                )
            try:
                vector = np.array([float(v) for v in components], dtype=np.float64)
            except ValueError:
                raise ValueError(f"{path}:{lineno}: non-numeric component for {word!r}") from None
            if not np.all(np.isfinite(vector)):
                raise ValueError(f"{path}:{lineno}: non-finite component for {word!r}")
            vectors[word] = vector
    if not vectors:
        raise ValueError(f"{path}: empty embedding file")
    return EmbeddingTable(dimension=dimension or 0, vectors=vectors)


def cosine_similarity(u: np.ndarray, v: np.ndarray) -> float:
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(np.dot(u, v) / (nu * nv))


def nearest_neighbor(word: str, table: EmbeddingTable, exclude: frozenset[str] = frozenset()) -> str:
    """Most cosine-similar vocabulary word, ties broken lexicographically."""
    if word not in table.vectors:
        raise ValueError(f"out of embedding vocabulary: {word!r}")
    query = table.vectors[word]
    best_word: str | None = None
    best_sim = -math.inf
    # Linear scan in sorted order; strict > keeps the lexicographically
    # smallest word on ties. Fine at the vocabulary sizes used here.
    for candidate in sorted(table.vectors):
        if candidate == word or candidate in exclude:
            continue
        sim = cosine_similarity(query, table.vectors[candidate])
        if sim > best_sim:
            best_word = candidate
            best_sim = sim
    if best_word is None:
        raise ValueError(f"no candidate synonyms left for {word!r}")
    return best_word


@lru_cache(maxsize=1)
def default_stopwords() -> frozenset[str]:
    data = resources.files("summkit").joinpath("data/stopwords.txt").read_text("utf-8")
    return frozenset(w for w in data.split() if w)


def load_stopwords(path: str | Path) -> frozenset[str]:
    """One lowercase stopword per line; blank lines and # comments ignored."""
    words: set[str] = set()
    for line in Path(path).read_text("utf-8").splitlines():
        word = line.strip().lower()
        if word and not word.startswith("#"):
            words.add(word)
    return frozenset(words)


@dataclass(frozen=True)
class AugmentConfig:
    ratio: float = 1.0 / 9.0
    copies: int = 9
    seed: int = 0
    stopwords: frozenset[str] = field(default_factory=default_stopwords)

    def __post_init__(self) -> None:
        if not 0.0 < self.ratio <= 1.0:
            raise ValueError(f"ratio must be in (0, 1], got {self.ratio}")
        if self.copies < 1:
            raise ValueError(f"copies must be >= 1, got {self.copies}")


@dataclass
class AugmentedInstance:
    variant_index: int
    document: ComposedInput
    summary: str
    replaced: int = 0
    skipped: int = 0  # drawn positions with no usable replacement
    warning: str | None = None


def eligible_positions(doc: ComposedInput, stopwords: frozenset[str]) -> list[tuple[int, int]]:
    """(sentence, token) positions that are neither stopwords nor numeric."""
    positions: list[tuple[int, int]] = []
    for si, sentence in enumerate(doc.sentences):
        for ti, token in enumerate(sentence.tokens):
            if token in stopwords:
                continue
            if any(ch.isdigit() for ch in token):
                continue
            positions.append((si, ti))
    return positions


def replacement_count(eligible_count: int, ratio: float) -> int:
    """max(1, round-half-up(ratio * eligible)); 0 only when nothing is eligible."""
    if eligible_count == 0:
        return 0
    return max(1, math.floor(ratio * eligible_count + 0.5))


def _variant_rng(seed: int, doc_id: str, variant_index: int) -> random.Random:
    key = f"{seed}:{doc_id}:{variant_index}".encode("utf-8")
    digest = hashlib.blake2b(key, digest_size=8).digest()
    return random.Random(int.from_bytes(digest, "big"))


def _is_single_token(word: str) -> bool:
    return normalize(word) == [word]


def _replace_token_in_text(text: str, token_index: int, synonym: str) -> str:
    matches = list(TOKEN_RE.finditer(text))
    m = matches[token_index]
    original = m.group(0)
    replacement = synonym[0].upper() + synonym[1:] if original[0].isupper() else synonym
    return text[: m.start()] + replacement + text[m.end() :]


def _copy_document(doc: ComposedInput) -> ComposedInput:
    sentences = [
        Sentence(text=s.text, tokens=list(s.tokens), doc_index=s.doc_index, origin=s.origin)
        for s in doc.sentences
    ]
    return ComposedInput(
        sentences=sentences,
        token_count=doc.token_count,
        truncated=doc.truncated,
        token_limit=doc.token_limit,
    )


def augment(
    doc: ComposedInput,
    summary: str,
    lexicon: SynonymLexicon,
    table: EmbeddingTable | None,
    config: AugmentConfig,
    *,
    doc_id: str,
) -> list[AugmentedInstance]:
    """Produce ``config.copies`` variants of a composed document.

    Per variant, k = max(1, round(ratio * |eligible|)) distinct eligible
    positions are drawn by a generator seeded from (seed, doc_id, variant
    index). Drawn tokens are replaced by their lexicon synonym, falling back
    to the nearest embedding neighbor (the new pair is added to the lexicon);
    tokens found in neither resource are skipped but still consume the draw.
    Replacement is strictly 1-for-1 so sentence/label alignment is preserved,
    and the original casing of the first letter is kept.

    Note: the embedding fallback mutates ``lexicon``. Serialize augmentation
    per corpus, or give workers private copies and merge afterward.
    """
    eligible = eligible_positions(doc, config.stopwords)
    if not eligible:
        return [
            AugmentedInstance(
                variant_index=v,
                document=_copy_document(doc),
                summary=summary,
                warning="no eligible positions",
            )
            for v in range(1, config.copies + 1)
        ]

    k = replacement_count(len(eligible), config.ratio)
    instances: list[AugmentedInstance] = []
    for variant in range(1, config.copies + 1):
        rng = _variant_rng(config.seed, doc_id, variant)
        drawn = sorted(rng.sample(range(len(eligible)), k))
        texts = [s.text for s in doc.sentences]
        tokens = [list(s.tokens) for s in doc.sentences]
        replaced = 0
        skipped = 0
        for index in drawn:
            si, ti = eligible[index]
            word = tokens[si][ti]
            synonym = lexicon.get(word)
            if synonym is None:
                if word in (table.vectors if table is not None else ()):
                    synonym = nearest_neighbor(word, table)
                    lexicon.add(word, synonym)
                elif table is None:
                    raise ValueError(
                        f"embedding table required to replace {word!r} (doc {doc_id})"
                    )
                else:
                    skipped += 1
                    continue
            if synonym == word or not _is_single_token(synonym):
                skipped += 1
                continue
            texts[si] = _replace_token_in_text(texts[si], ti, synonym)
            tokens[si][ti] = synonym
            replaced += 1
        sentences = [
            Sentence(text=texts[i], tokens=tokens[i], doc_index=s.doc_index, origin=s.origin)
            for i, s in enumerate(doc.sentences)
        ]
        document = ComposedInput(
            sentences=sentences,
            token_count=doc.token_count,
            truncated=doc.truncated,
            token_limit=doc.token_limit,
        )
        instances.append(
            AugmentedInstance(
                variant_index=variant,
                document=document,
                summary=summary,
                replaced=replaced,
                skipped=skipped,
            )
        )
    return instances
