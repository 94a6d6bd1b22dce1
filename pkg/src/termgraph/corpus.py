"""POS-tagged corpus parsing and noun-phrase chunking.

The corpus format is line based: each document is a block starting with
``#DOC <doc_id>``, optionally followed by ``#META key=value`` lines, then one
line per sentence of whitespace-separated ``surface/TAG`` or
``surface/TAG/lemma`` tokens.  Blocks are separated by blank lines.

Chunking extracts simplex noun phrases (no prepositional attachment) with the
pattern ``(DET)? (ADJ|NOUN|PROPN|VERB_ING)* (NOUN|PROPN)`` and then merges
adjacent simplex phrases linked by the preposition "of" into complex
terminological phrases.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, TextIO

from .errors import EmptyAfterNormalization, EmptyCorpus, MalformedRecord, MalformedTagMapLine
from .terms import normalize

COARSE_TAGS = frozenset({
    "NOUN", "PROPN", "ADJ", "VERB_ING", "DET", "PREP", "CONJ", "NUM", "OTHER",
})

# Content tags allowed inside a simplex NP; the span must end on a head tag.
_MODIFIER_TAGS = frozenset({"ADJ", "NOUN", "PROPN", "VERB_ING"})
_HEAD_TAGS = frozenset({"NOUN", "PROPN"})

# Penn Treebank to coarse tag mapping, usable directly or as a template for
# custom tag-map files.
PENN_TAG_MAP = {
    "NN": "NOUN", "NNS": "NOUN",
    "NNP": "PROPN", "NNPS": "PROPN",
    "JJ": "ADJ", "JJR": "ADJ", "JJS": "ADJ",
    "VBG": "VERB_ING",
    "DT": "DET", "PDT": "DET",
    "IN": "PREP", "TO": "PREP",
    "CC": "CONJ",
    "CD": "NUM",
}


@dataclass(frozen=True)
class TaggedToken:
    surface: str
    lemma: str
    pos: str

    def __post_init__(self):
        if not self.surface or any(c.isspace() for c in self.surface):
            raise ValueError(f"bad surface {self.surface!r}")
        if self.pos not in COARSE_TAGS:
            raise ValueError(f"bad pos tag {self.pos!r}")


@dataclass(frozen=True)
class Document:
    """One corpus document (e.g. one abstract) as an ordered token sequence.

    sentence_breaks holds the token index at which each sentence starts;
    chunking never crosses these boundaries.
    """

    doc_id: str
    tokens: tuple[TaggedToken, ...]
    metadata: dict[str, str] = field(default_factory=dict)
    sentence_breaks: tuple[int, ...] = (0,)

    def sentences(self) -> Iterator[tuple[int, int]]:
        """Yield (start, end) token windows, one per sentence."""
        starts = list(self.sentence_breaks) or [0]
        for i, start in enumerate(starts):
            end = starts[i + 1] if i + 1 < len(starts) else len(self.tokens)
            if end > start:
                yield start, end


@dataclass(frozen=True)
class NounPhraseSpan:
    """A candidate term occurrence: token range plus normalized words."""

    doc_id: str
    start: int
    end: int
    words: tuple[str, ...]
    surface: str


@dataclass(frozen=True)
class ParseLimits:
    max_docs: int | None = None


@dataclass(frozen=True)
class ComplexNpConfig:
    # Maximum number of "of"-merges in one chain of simplex phrases.
    max_merge: int = 2


def load_tag_map(stream: TextIO | Iterable[str]) -> dict[str, str]:
    """Load a TSV tag map (input_tag, coarse_tag). Lines with # are comments."""
    mapping: dict[str, str] = {}
    for line_no, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0] or not parts[1]:
            raise MalformedTagMapLine(line_no, f"expected 2 columns, got {line!r}")
        coarse = parts[1].upper()
        if coarse not in COARSE_TAGS:
            raise MalformedTagMapLine(line_no, f"unknown coarse tag {parts[1]!r}")
        mapping[parts[0]] = coarse
    return mapping


def _resolve_tag(tag: str, tag_map: dict[str, str] | None) -> str:
    if tag in COARSE_TAGS:
        return tag
    if tag_map and tag in tag_map:
        return tag_map[tag]
    if tag.upper() in COARSE_TAGS:
        return tag.upper()
    return "OTHER"


def _parse_token(text: str, line_no: int, tag_map: dict[str, str] | None) -> TaggedToken:
    parts = text.split("/")
    if len(parts) == 2:
        surface, tag = parts
        lemma = surface
    elif len(parts) == 3:
        surface, tag, lemma = parts
    else:
        raise MalformedRecord(line_no, f"token {text!r} is not surface/TAG or surface/TAG/lemma")
    if not surface or not tag:
        raise MalformedRecord(line_no, f"token {text!r} has an empty field")
    if not lemma:
        lemma = surface
    return TaggedToken(surface=surface, lemma=lemma, pos=_resolve_tag(tag, tag_map))


def parse_corpus(
    source: TextIO | Iterable[str],
    tag_map: dict[str, str] | None = None,
    limits: ParseLimits | None = None,
) -> list[Document]:
    """Parse a tagged corpus stream into documents.

    Raises MalformedRecord (with the offending line number) on syntax
    errors and EmptyCorpus when no document was parsed.
    """
    limits = limits or ParseLimits()
    docs: list[Document] = []
    seen_ids: set[str] = set()

    cur_id: str | None = None
    cur_meta: dict[str, str] = {}
    cur_tokens: list[TaggedToken] = []
    cur_breaks: list[int] = []

    def at_limit() -> bool:
        return limits.max_docs is not None and len(docs) >= limits.max_docs

    def flush():
        nonlocal cur_id, cur_meta, cur_tokens, cur_breaks
        if cur_id is not None and not at_limit():
            docs.append(Document(
                doc_id=cur_id,
                tokens=tuple(cur_tokens),
                metadata=dict(cur_meta),
                sentence_breaks=tuple(cur_breaks) or (0,),
            ))
        cur_id, cur_meta, cur_tokens, cur_breaks = None, {}, [], []

    for line_no, raw in enumerate(source, start=1):
        line = raw.rstrip("\n").strip()
        if not line:
            flush()
            if at_limit():
                break
            continue
        if line.startswith("#DOC"):
            flush()  # tolerate a missing blank line between blocks
            parts = line.split(None, 1)
            if len(parts) != 2 or not parts[1].strip():
                raise MalformedRecord(line_no, "#DOC line without a document id")
            doc_id = parts[1].strip()
            if doc_id in seen_ids:
                raise MalformedRecord(line_no, f"duplicate doc id {doc_id!r}")
            seen_ids.add(doc_id)
            cur_id = doc_id
            continue
        if line.startswith("#META"):
            if cur_id is None:
                raise MalformedRecord(line_no, "#META before any #DOC")
            body = line[len("#META"):].strip()
            key, sep, value = body.partition("=")
            if not sep or not key.strip():
                raise MalformedRecord(line_no, f"bad #META line {line!r}")
            cur_meta[key.strip()] = value.strip()
            continue
        if cur_id is None:
            raise MalformedRecord(line_no, "token line before any #DOC")
        cur_breaks.append(len(cur_tokens))
        for piece in line.split():
            cur_tokens.append(_parse_token(piece, line_no, tag_map))

    flush()
    if not docs:
        raise EmptyCorpus("no documents in corpus stream")
    return docs


def _qualifies(tok: TaggedToken, tags: frozenset[str]) -> bool:
    # NUM is never NP content; single-character tokens are treated as noise.
    return tok.pos in tags and len(tok.surface) > 1


def _span_words(tokens: Sequence[TaggedToken]) -> tuple[str, ...] | None:
    try:
        return normalize([t.lemma for t in tokens])
    except EmptyAfterNormalization:
        return None


def chunk_simplex(doc: Document) -> list[NounPhraseSpan]:
    """Extract maximal simplex noun-phrase spans from a document.

    Within each sentence, a span is a maximal run of modifier tokens ending
    at its last head-capable token, optionally preceded by one determiner.
    The determiner is part of the span range but stripped from the words.
    """
    spans: list[NounPhraseSpan] = []
    toks = doc.tokens
    for sent_start, sent_end in doc.sentences():
        i = sent_start
        while i < sent_end:
            if not _qualifies(toks[i], _MODIFIER_TAGS):
                i += 1
                continue
            # maximal run of content tokens
            j = i
            while j < sent_end and _qualifies(toks[j], _MODIFIER_TAGS):
                j += 1
            # truncate the run at its last head-capable token
            last_head = -1
            for k in range(j - 1, i - 1, -1):
                if _qualifies(toks[k], _HEAD_TAGS):
                    last_head = k
                    break
            if last_head >= 0:
                start = i
                if start > sent_start and toks[start - 1].pos == "DET":
                    start -= 1
                content = toks[i:last_head + 1]
                words = _span_words(content)
                if words:
                    spans.append(NounPhraseSpan(
                        doc_id=doc.doc_id,
                        start=start,
                        end=last_head + 1,
                        words=words,
                        surface=" ".join(t.surface for t in content),
                    ))
            i = j
    return spans


def _of_gap(doc: Document, gap_start: int, gap_end: int) -> bool:
    """True when tokens in [gap_start, gap_end) are exactly "of" (+ one DET)."""
    gap = doc.tokens[gap_start:gap_end]
    if not gap or gap[0].pos != "PREP" or gap[0].surface.casefold() != "of":
        return False
    if len(gap) == 1:
        return True
    return len(gap) == 2 and gap[1].pos == "DET"


def chunk_complex(
    doc: Document,
    spans: Sequence[NounPhraseSpan],
    config: ComplexNpConfig | None = None,
) -> list[NounPhraseSpan]:
    """Merge "of"-linked simplex spans into complex spans.

    Every chain window of up to ``max_merge`` merges is emitted: for spans
    a, b, c linked as "a of b of c" the output adds [a b], [b c] and
    (left-associatively) [a b c].  Simplex spans are always retained.
    """
    config = config or ComplexNpConfig()
    simplex = sorted(spans, key=lambda s: (s.start, s.end))
    by_start = {s.start: s for s in simplex}
    sentence_of = {}
    for idx, (ss, se) in enumerate(doc.sentences()):
        for s in simplex:
            if ss <= s.start and s.end <= se:
                sentence_of[(s.start, s.end)] = idx

    merged: list[NounPhraseSpan] = []
    for base in simplex:
        cur_words = list(base.words)
        cur_surface = base.surface
        cur_end = base.end
        sent = sentence_of.get((base.start, base.end))
        for _ in range(config.max_merge):
            nxt = None
            for gap_len in (1, 2):
                cand = by_start.get(cur_end + gap_len)
                if (cand is not None
                        and sentence_of.get((cand.start, cand.end)) == sent
                        and _of_gap(doc, cur_end, cur_end + gap_len)):
                    nxt = cand
                    break
            if nxt is None:
                break
            gap_surface = " ".join(t.surface for t in doc.tokens[cur_end:nxt.start])
            cur_words = cur_words + list(nxt.words)
            cur_surface = f"{cur_surface} {gap_surface} {nxt.surface}"
            cur_end = nxt.end
            merged.append(NounPhraseSpan(
                doc_id=doc.doc_id,
                start=base.start,
                end=cur_end,
                words=tuple(cur_words),
                surface=cur_surface,
            ))
    return sorted(list(simplex) + merged, key=lambda s: (s.start, s.end))


def extract_spans(doc: Document, config: ComplexNpConfig | None = None) -> list[NounPhraseSpan]:
    """Run simplex then complex chunking on one document."""
    return chunk_complex(doc, chunk_simplex(doc), config)
