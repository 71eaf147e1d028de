"""Tagged-paper parsing, sentence segmentation, and model-input composition.

Corpus file format: UTF-8 text where the marker lines ``TITLE``, ``SECTION``
and ``PARAGRAPH`` each stand on a line of their own. The document title is
the first content line after ``TITLE``; a section's heading is the first
content line after its ``SECTION`` marker (blank lines and an interposed
``PARAGRAPH`` marker are tolerated in between). Content lines accumulate
into paragraphs; a blank line or any marker line closes the current
paragraph. One paper per file, the file stem is the document id, and the
gold lay summary lives in a sibling ``<id>.summary.txt``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from .metrics import normalize

MARKER_LINES = ("TITLE", "SECTION", "PARAGRAPH")
DEFAULT_TOKEN_LIMIT = 1024
DEFAULT_SECTION = "body"
SUMMARY_SUFFIX = ".summary.txt"

ABSTRACT = "abstract"
INTRODUCTION = "introduction"
CONCLUSION = "conclusion"


class CompositionStrategy(Enum):
    """Which sections form the composed model input."""

    ABS = "abs"
    ABS_INTRO_FIRST = "abs-intro"
    ABS_INTRO_ALL = "abs-intro-all"
    ABS_INTRO_CON = "abs-intro-con"


@dataclass
class Section:
    name: str  # normalized label: abstract | introduction | conclusion | other heading
    paragraphs: list[str] = field(default_factory=list)


@dataclass
class PaperDocument:
    id: str
    title: str
    sections: list[Section]
    has_abstract: bool
    has_introduction: bool
    has_conclusion: bool

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "title": self.title,
            "sections": [{"name": s.name, "paragraphs": list(s.paragraphs)} for s in self.sections],
            "has_abstract": self.has_abstract,
            "has_introduction": self.has_introduction,
            "has_conclusion": self.has_conclusion,
        }


@dataclass
class Sentence:
    text: str
    tokens: list[str]
    doc_index: int
    origin: str

    def __post_init__(self) -> None:
        if self.tokens != normalize(self.text):
            raise ValueError(f"tokens do not match normalize(text) for sentence {self.doc_index}")


@dataclass
class ComposedInput:
    sentences: list[Sentence]
    token_count: int
    truncated: bool
    token_limit: int = DEFAULT_TOKEN_LIMIT

    def __post_init__(self) -> None:
        if self.token_limit <= 0:
            raise ValueError(f"token_limit must be positive, got {self.token_limit}")
        if self.token_count > self.token_limit:
            raise ValueError(f"token_count {self.token_count} exceeds limit {self.token_limit}")
        for expected, sentence in enumerate(self.sentences):
            if sentence.doc_index != expected:
                raise ValueError("sentence doc_index values must be consecutive from 0")


@dataclass
class ScisummSample:
    id: str
    abstract_sentences: list[Sentence]
    citation_sentences: list[Sentence]
    gold_summary: str


_ENUMERATION_RE = re.compile(r"^(?:\d+(?:\.\d+)*\.?|[ivxlcdm]+\.)\s+", re.IGNORECASE)


def normalize_heading(text: str) -> str:
    """Lowercased heading with leading enumeration ('1', '2.3', 'IV.') stripped."""
    heading = " ".join(text.split())
    heading = _ENUMERATION_RE.sub("", heading)
    return heading.strip(" :.–-").lower()


def read_document(path: str | Path) -> str:
    """Read a corpus file as UTF-8, reporting the byte offset on decode failure."""
    data = Path(path).read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ValueError(f"{path}: undecodable byte at offset {exc.start}") from None


def parse_laysumm(raw_text: str, doc_id: str) -> PaperDocument:
    """Parse marker-tagged paper text into sections and paragraphs.

    All marker lines are consumed; no output string contains a standalone
    TITLE/SECTION/PARAGRAPH line. Text before any SECTION marker lands in a
    default section so markerless input still parses (with all presence
    flags false).
    """
    if not raw_text.strip():
        raise ValueError(f"empty document: {doc_id}")

    title = ""
    sections: list[Section] = []
    current: Section | None = None
    pending: str | None = None  # "title" | "heading"
    buffer: list[str] = []

    def flush_paragraph() -> None:
        nonlocal current
        if not buffer:
            return
        paragraph = " ".join(" ".join(buffer).split())
        buffer.clear()
        if not paragraph:
            return
        if current is None:
            current = Section(DEFAULT_SECTION)
            sections.append(current)
        current.paragraphs.append(paragraph)

    for line in raw_text.splitlines():
        stripped = line.strip()
        if stripped in MARKER_LINES:
            flush_paragraph()
            if stripped == "TITLE":
                pending = "title"
            elif stripped == "SECTION":
                pending = "heading"
            # PARAGRAPH only closes the previous paragraph; a pending
            # title/heading still waits for its content line.
            continue
        if not stripped:
            flush_paragraph()
            continue
        if pending == "title" and not title:
            title = stripped
            pending = None
            continue
        if pending == "heading":
            current = Section(normalize_heading(stripped))
            sections.append(current)
            pending = None
            continue
        pending = None
        buffer.append(stripped)
    flush_paragraph()

    def present(name: str) -> bool:
        return any(s.name == name and s.paragraphs for s in sections)

    return PaperDocument(
        id=doc_id,
        title=title,
        sections=sections,
        has_abstract=present(ABSTRACT),
        has_introduction=present(INTRODUCTION),
        has_conclusion=present(CONCLUSION),
    )


def is_outlier(doc: PaperDocument) -> bool:
    """A paper lacking an Abstract or an Introduction is excluded from training."""
    return not (doc.has_abstract and doc.has_introduction)


_TERMINATORS = ".!?"
_CLOSERS = "\"')]’”"

# Tokens (including the trailing period) that must not end a sentence.
_ABBREVIATIONS = frozenset(
    {
        "fig.", "figs.", "eq.", "eqs.", "sec.", "secs.", "ref.", "refs.",
        "tab.", "no.", "vol.", "al.", "e.g.", "i.e.", "vs.", "cf.", "ca.",
        "resp.", "approx.",
    }
)


def _ends_with_abbreviation(text: str, dot: int) -> bool:
    start = text.rfind(" ", 0, dot) + 1
    token = text[start : dot + 1].lstrip("([\"'")
    if token.lower() in _ABBREVIATIONS:
        return True
    # Single capital + period guards initials ("J. Smith", "John Q. Public"):
    # only at the start of the text or after another capitalized word, so a
    # plain symbol reference such as "We do X. We do Y." still splits.
    if len(token) == 2 and token[0].isupper() and token[1] == ".":
        if start == 0:
            return True
        prev_start = text.rfind(" ", 0, start - 1) + 1
        prev = text[prev_start : start - 1]
        return bool(prev) and prev[0].isupper()
    return False


def split_sentences(paragraph: str) -> list[str]:
    """Rule-based sentence segmentation over whitespace-normalized text.

    Splits after '.', '!' or '?' (plus trailing quotes/brackets) when a space
    and an uppercase letter or digit follow, unless the preceding token is a
    guarded abbreviation. Joining the result with single spaces reproduces
    the whitespace-normalized paragraph.
    """
    text = " ".join(paragraph.split())
    if not text:
        return []
    sentences: list[str] = []
    start = 0
    i = 0
    n = len(text)
    while i < n:
        if text[i] in _TERMINATORS:
            j = i + 1
            while j < n and text[j] in _CLOSERS:
                j += 1
            nxt = j + 1  # first char after the single separating space
            if (
                j < n
                and text[j] == " "
                and nxt < n
                and (text[nxt].isupper() or text[nxt].isdigit())
                and not (text[i] == "." and _ends_with_abbreviation(text, i))
            ):
                sentences.append(text[start:j])
                start = nxt
                i = nxt
                continue
        i += 1
    tail = text[start:]
    if tail:
        sentences.append(tail)
    return sentences


def _section_paragraphs(doc: PaperDocument, name: str) -> list[str]:
    return [p for s in doc.sections if s.name == name for p in s.paragraphs]


def _assemble(blocks: list[tuple[str, str]], token_limit: int) -> ComposedInput:
    """Segment paragraph blocks into sentences and keep the longest prefix
    of whole sentences that fits the token budget."""
    staged: list[tuple[str, list[str], str]] = []
    for origin, paragraph in blocks:
        for text in split_sentences(paragraph):
            tokens = normalize(text)
            if tokens:
                staged.append((text, tokens, origin))
    total = sum(len(tokens) for _, tokens, _ in staged)
    kept: list[Sentence] = []
    count = 0
    for text, tokens, origin in staged:
        if count + len(tokens) > token_limit:
            break
        kept.append(Sentence(text=text, tokens=tokens, doc_index=len(kept), origin=origin))
        count += len(tokens)
    return ComposedInput(
        sentences=kept,
        token_count=count,
        truncated=total > token_limit,
        token_limit=token_limit,
    )


def compose_input(
    doc: PaperDocument,
    strategy: CompositionStrategy,
    token_limit: int = DEFAULT_TOKEN_LIMIT,
) -> ComposedInput:
    """Compose the model input from a document under the given strategy.

    Section order is fixed: Abstract, then Introduction material, then
    Conclusion. A missing Conclusion under ABS_INTRO_CON is tolerated.
    Truncation drops whole trailing sentences so labels stay aligned.
    """
    if token_limit <= 0:
        raise ValueError(f"token_limit must be positive, got {token_limit}")
    if is_outlier(doc):
        raise ValueError(f"outlier document: {doc.id}")

    blocks = [(ABSTRACT, p) for p in _section_paragraphs(doc, ABSTRACT)]
    intro = _section_paragraphs(doc, INTRODUCTION)
    if strategy in (CompositionStrategy.ABS_INTRO_FIRST, CompositionStrategy.ABS_INTRO_CON):
        blocks += [(INTRODUCTION, p) for p in intro[:1]]
    elif strategy is CompositionStrategy.ABS_INTRO_ALL:
        blocks += [(INTRODUCTION, p) for p in intro]
    if strategy is CompositionStrategy.ABS_INTRO_CON:
        blocks += [(CONCLUSION, p) for p in _section_paragraphs(doc, CONCLUSION)]
    return _assemble(blocks, token_limit)


def parse_scisumm(
    abstract_text: str,
    citation_texts: list[str],
    gold: str,
    sample_id: str,
) -> ScisummSample:
    """Build a sample from an abstract plus annotator-selected citation sentences."""
    if not gold.strip():
        raise ValueError(f"empty gold summary: {sample_id}")
    if not abstract_text.strip():
        raise ValueError(f"empty abstract: {sample_id}")

    abstract_sentences: list[Sentence] = []
    index = 0
    for text in split_sentences(abstract_text):
        tokens = normalize(text)
        if not tokens:
            continue
        abstract_sentences.append(Sentence(text=text, tokens=tokens, doc_index=index, origin=ABSTRACT))
        index += 1
    citation_sentences: list[Sentence] = []
    for chunk in citation_texts:
        for text in split_sentences(chunk):
            tokens = normalize(text)
            if not tokens:
                continue
            citation_sentences.append(Sentence(text=text, tokens=tokens, doc_index=index, origin="citation"))
            index += 1
    return ScisummSample(
        id=sample_id,
        abstract_sentences=abstract_sentences,
        citation_sentences=citation_sentences,
        gold_summary=gold,
    )


def compose_scisumm(sample: ScisummSample, token_limit: int = DEFAULT_TOKEN_LIMIT) -> ComposedInput:
    """Composed input for a sample: abstract sentences first, then citations."""
    if token_limit <= 0:
        raise ValueError(f"token_limit must be positive, got {token_limit}")
    blocks = [(s.origin, s.text) for s in list(sample.abstract_sentences) + list(sample.citation_sentences)]
    return _assemble(blocks, token_limit)


def iter_paper_files(directory: str | Path) -> list[Path]:
    """Corpus paper files in stable order, skipping the summary sidecars."""
    return sorted(p for p in Path(directory).glob("*.txt") if not p.name.endswith(SUMMARY_SUFFIX))


def load_laysumm_dir(directory: str | Path) -> list[tuple[PaperDocument, str]]:
    """Parse every paper in a corpus directory together with its gold summary."""
    directory = Path(directory)
    pairs: list[tuple[PaperDocument, str]] = []
    files = iter_paper_files(directory)
    if not files:
        raise ValueError(f"no corpus files in {directory}")
    for path in files:
        doc = parse_laysumm(read_document(path), path.stem)
        summary_path = directory / f"{doc.id}{SUMMARY_SUFFIX}"
        if not summary_path.exists():
            raise ValueError(f"missing gold summary for {doc.id}: {summary_path}")
        gold = read_document(summary_path).strip()
        if not gold:
            raise ValueError(f"empty gold summary: {doc.id}")
        pairs.append((doc, gold))
    return pairs


def load_scisumm_dir(directory: str | Path) -> list[ScisummSample]:
    """Load samples stored as <id>.abstract.txt / <id>.citations.txt / <id>.summary.txt.

    The citations file holds one annotator-selected sentence per line and may
    be absent (abstract-only sample).
    """
    directory = Path(directory)
    abstract_files = sorted(directory.glob("*.abstract.txt"))
    if not abstract_files:
        raise ValueError(f"no *.abstract.txt files in {directory}")
    samples: list[ScisummSample] = []
    for path in abstract_files:
        sample_id = path.name[: -len(".abstract.txt")]
        citations_path = directory / f"{sample_id}.citations.txt"
        citations: list[str] = []
        if citations_path.exists():
            citations = [line for line in read_document(citations_path).splitlines() if line.strip()]
        summary_path = directory / f"{sample_id}{SUMMARY_SUFFIX}"
        if not summary_path.exists():
            raise ValueError(f"missing gold summary for {sample_id}: {summary_path}")
        gold = read_document(summary_path).strip()
        samples.append(parse_scisumm(read_document(path), citations, gold, sample_id))
    return samples
