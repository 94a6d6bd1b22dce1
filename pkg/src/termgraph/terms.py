"""Canonical multiword-term representation.

Word sequences are normalized (case-folded, hyphen/slash split, plural
fallback), then aggregated into an inventory of unique terms with corpus
frequencies.  English nominal compounds are treated as right-headed, so the
head of every term is its last word.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import EmptyAfterNormalization

# Words returned unchanged by the plural fallback (lexicalized -s forms).
UNINFLECTED = frozenset({
    "series", "species", "news", "physics", "mathematics", "economics",
    "electronics", "dynamics", "statistics", "semantics", "linguistics",
})

# Exact-match irregular plurals the suffix rules cannot reach.
IRREGULAR_PLURALS = {
    "data": "datum",
    "children": "child",
    "criteria": "criterion",
    "phenomena": "phenomenon",
    "men": "man",
    "women": "woman",
    "mice": "mouse",
    "feet": "foot",
    "teeth": "tooth",
}

_SPLIT_RE = re.compile(r"[-/]")

# -es endings where the suffix is a sibilant plural marker ("boxes", "classes")
# rather than a plain -s plural on an e-final stem ("types").
_SIBILANT_ES = ("sses", "ches", "shes", "xes", "zes")


def singularize(word: str) -> str:
    """Rule-based plural stripper used as the lemma fallback.

    Deterministic and idempotent, not dictionary-accurate: the goal is a
    stable normal form, not perfect English morphology.
    """
    if word in IRREGULAR_PLURALS:
        return IRREGULAR_PLURALS[word]
    if word in UNINFLECTED:
        return word
    if word.endswith("ies") and len(word) > 3:
        return word[:-3] + "y"
    if word.endswith(("ss", "us", "is")):
        return word
    if word.endswith("es") and len(word) > 3:
        if word.endswith(_SIBILANT_ES):
            return word[:-2]
        return word[:-1]
    if word.endswith("s") and len(word) > 2:
        return word[:-1]
    return word


def normalize(words: Sequence[str]) -> tuple[str, ...]:
    """Normalize a raw word sequence into its canonical form.

    Case-folds every word, splits on hyphens and slashes, drops empty
    pieces and applies the plural fallback to each piece.

    Raises EmptyAfterNormalization when nothing survives.
    """
    out: list[str] = []
    for word in words:
        for piece in _SPLIT_RE.split(word.casefold()):
            if piece:
                out.append(singularize(piece))
    if not out:
        raise EmptyAfterNormalization(f"nothing left of {list(words)!r}")
    return tuple(out)


@dataclass(frozen=True)
class Term:
    """A unique normalized term with its corpus statistics."""

    term_id: int
    words: tuple[str, ...]
    surfaces: frozenset[str]
    freq_occurrences: int
    freq_docs: int

    @property
    def head_index(self) -> int:
        # English compounds are right-headed; the head is always last.
        return len(self.words) - 1

    @property
    def head(self) -> str:
        return self.words[-1]

    def __post_init__(self):
        if not self.words:
            raise ValueError("term must have at least one word")
        if self.freq_docs > self.freq_occurrences:
            raise ValueError("freq_docs cannot exceed freq_occurrences")


def uniterms(term: Term) -> frozenset[str]:
    """Distinct single words making up a term."""
    return frozenset(term.words)


@dataclass
class TermInventory:
    """Immutable-after-build collection of unique terms with lookups."""

    terms: tuple[Term, ...]
    by_words: dict[tuple[str, ...], int] = field(repr=False)
    by_word: dict[str, frozenset[int]] = field(repr=False)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Term]:
        return iter(self.terms)

    def get(self, term_id: int) -> Term | None:
        if 0 <= term_id < len(self.terms):
            return self.terms[term_id]
        return None

    def lookup(self, words: Sequence[str]) -> int | None:
        return self.by_words.get(tuple(words))

    def terms_containing(self, word: str) -> frozenset[int]:
        return self.by_word.get(word, frozenset())


def intern(spans: Iterable) -> TermInventory:
    """Aggregate noun-phrase spans into an inventory of unique terms.

    One term per distinct normalized word sequence.  Term ids are assigned
    by sorting the distinct sequences lexicographically, so the numbering
    is independent of span order.
    """
    occurrences: dict[tuple[str, ...], int] = defaultdict(int)
    docs: dict[tuple[str, ...], set[str]] = defaultdict(set)
    surfaces: dict[tuple[str, ...], set[str]] = defaultdict(set)
    for span in spans:
        key = tuple(span.words)
        occurrences[key] += 1
        docs[key].add(span.doc_id)
        surfaces[key].add(span.surface)

    terms: list[Term] = []
    by_words: dict[tuple[str, ...], int] = {}
    word_index: dict[str, set[int]] = defaultdict(set)
    for term_id, words in enumerate(sorted(occurrences)):
        terms.append(Term(
            term_id=term_id,
            words=words,
            surfaces=frozenset(surfaces[words]),
            freq_occurrences=occurrences[words],
            freq_docs=len(docs[words]),
        ))
        by_words[words] = term_id
        for word in set(words):
            word_index[word].add(term_id)

    by_word = {w: frozenset(ids) for w, ids in word_index.items()}
    return TermInventory(terms=tuple(terms), by_words=by_words, by_word=by_word)


def inventory_to_tsv(inv: TermInventory) -> str:
    """Render the inventory as TSV (term_id, words, freqs, surfaces)."""
    lines = ["term_id\twords\tfreq_occurrences\tfreq_docs\tsurfaces"]
    for term in inv:
        lines.append("\t".join([
            str(term.term_id),
            " ".join(term.words),
            str(term.freq_occurrences),
            str(term.freq_docs),
            "|".join(sorted(term.surfaces)),
        ]))
    return "\n".join(lines) + "\n"
