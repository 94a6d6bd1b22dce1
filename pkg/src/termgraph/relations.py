"""Detection of variation relations between terms.

Six relation kinds are recognized between word sequences:

- ``ORTH``: same normal form, different raw writing (hyphenation, case,
  plural).  Inside one inventory these collapse at interning time, so the
  relation is recorded as a merge statistic rather than as edges.
- ``SUB_SYN``: exactly one word substituted by a lexicon-attested synonym.
- ``INS``: words inserted strictly inside the term, endpoints preserved.
- ``EXP_L``: modifiers added on the left, head preserved (proper suffix).
- ``EXP_R``: the term extended on the right so its head changes (proper
  prefix).  Excluded from component clustering.
- ``LR_EXP``: containment as a contiguous word-level substring, subsuming
  both expansion kinds; the relation used for refinement of external terms.

The first four (ORTH, SUB_SYN, INS, EXP_L) form the tight COMP set used to
cluster terms into connected components.

The expansion kinds are made mutually exclusive by precedence
EXP_L > INS > EXP_R: when a shorter term is both a suffix and a prefix of a
longer one (possible with repeated words) the head is preserved, so the pair
classifies as EXP_L, not EXP_R.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence, TextIO

from .errors import MalformedLexiconLine
from .terms import Term, TermInventory, normalize


class RelationKind(Enum):
    ORTH = "orth"
    SUB_SYN = "sub_syn"
    INS = "ins"
    EXP_L = "exp_l"
    EXP_R = "exp_r"
    LR_EXP = "lr_exp"

    @property
    def tag(self) -> str:
        return self.value

    @property
    def in_comp(self) -> bool:
        return self in _COMP_KINDS


_COMP_KINDS = frozenset({
    RelationKind.ORTH, RelationKind.SUB_SYN, RelationKind.INS, RelationKind.EXP_L,
})

# Canonical ordering for edge exports and deterministic sorts.
KIND_ORDER = {
    RelationKind.ORTH: 0,
    RelationKind.SUB_SYN: 1,
    RelationKind.INS: 2,
    RelationKind.EXP_L: 3,
    RelationKind.EXP_R: 4,
    RelationKind.LR_EXP: 5,
}

# Symmetric kinds are stored once with a < b; the rest are directed short -> long.
SYMMETRIC_KINDS = frozenset({RelationKind.ORTH, RelationKind.SUB_SYN})


@dataclass(frozen=True)
class VariationEdge:
    a: int
    b: int
    kind: RelationKind

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError("edge endpoints must differ")
        if self.kind in SYMMETRIC_KINDS and self.a > self.b:
            raise ValueError("symmetric edges are stored with a < b")

    def sort_key(self) -> tuple[int, int, int]:
        return (KIND_ORDER[self.kind], self.a, self.b)


@dataclass
class SynonymLexicon:
    """Symmetric, irreflexive synonym relation over normalized words."""

    source_tag: str = ""
    _syns: dict[str, frozenset[str]] = field(default_factory=dict, repr=False)
    skipped_lines: list[int] = field(default_factory=list)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, str]], source_tag: str = "") -> "SynonymLexicon":
        table: dict[str, set[str]] = {}
        for a, b in pairs:
            if a == b:
                continue
            table.setdefault(a, set()).add(b)
            table.setdefault(b, set()).add(a)
        lex = cls(source_tag=source_tag)
        lex._syns = {w: frozenset(s) for w, s in table.items()}
        return lex

    def contains(self, a: str, b: str) -> bool:
        return b in self._syns.get(a, frozenset())

    def synonyms(self, word: str) -> frozenset[str]:
        return self._syns.get(word, frozenset())

    def pairs(self) -> list[tuple[str, str]]:
        """All ordered pairs (both directions), sorted."""
        out = []
        for a, syns in self._syns.items():
            for b in syns:
                out.append((a, b))
        return sorted(out)

    def __len__(self) -> int:
        # number of unordered pairs
        return sum(len(s) for s in self._syns.values()) // 2


def load_lexicon(stream: TextIO | Iterable[str], source_tag: str = "") -> SynonymLexicon:
    """Load a two-column TSV synonym table; returns its symmetric closure.

    Reflexive entries (identical after normalization) are skipped and
    recorded in ``skipped_lines``; structurally bad lines raise
    MalformedLexiconLine.
    """
    pairs: list[tuple[str, str]] = []
    skipped: list[int] = []
    for line_no, raw in enumerate(stream, start=1):
        line = raw.rstrip("\n").strip()
        if not line or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 2 or not cols[0].strip() or not cols[1].strip():
            raise MalformedLexiconLine(line_no, f"expected 2 columns, got {line!r}")
        left = normalize([cols[0].strip()])
        right = normalize([cols[1].strip()])
        if len(left) != 1 or len(right) != 1:
            raise MalformedLexiconLine(line_no, f"entry is not a single word: {line!r}")
        if left[0] == right[0]:
            skipped.append(line_no)
            continue
        pairs.append((left[0], right[0]))
    lex = SynonymLexicon.from_pairs(pairs, source_tag=source_tag)
    lex.skipped_lines = skipped
    return lex


Words = Sequence[str]


def _words(t: "Term | Words") -> tuple[str, ...]:
    if isinstance(t, Term):
        return t.words
    return tuple(t)


def is_subsequence(short: Words, long: Words) -> bool:
    it = iter(long)
    return all(any(w == x for x in it) for w in short)


def detect_orth(a: "Term | Words", b: "Term | Words") -> bool:
    """Orthographic variants: same normal form from different raw writing.

    Operates on raw (pre-interning) word sequences; two interned terms can
    never be ORTH variants because interning already merged them.
    """
    if isinstance(a, Term) and isinstance(b, Term):
        return a.words == b.words and a.surfaces != b.surfaces
    raw_a, raw_b = tuple(a), tuple(b)
    if raw_a == raw_b:
        return False
    return normalize(raw_a) == normalize(raw_b)


def detect_exp_l(short: "Term | Words", long: "Term | Words") -> bool:
    """Left expansion: the short term is a proper contiguous suffix."""
    s, l = _words(short), _words(long)
    return len(s) < len(l) and l[len(l) - len(s):] == s


def detect_ins(short: "Term | Words", long: "Term | Words") -> bool:
    """Insertion: same endpoints, short is a non-suffix subsequence of long."""
    s, l = _words(short), _words(long)
    if len(s) >= len(l) or not s:
        return False
    if s[0] != l[0] or s[-1] != l[-1]:
        return False
    if l[len(l) - len(s):] == s:  # that would be a left expansion
        return False
    return is_subsequence(s, l)


def detect_exp_r(short: "Term | Words", long: "Term | Words") -> bool:
    """Head expansion: proper contiguous prefix, not classifiable as
    EXP_L or INS (those preserve the head and take precedence)."""
    s, l = _words(short), _words(long)
    if len(s) >= len(l) or l[:len(s)] != s:
        return False
    return not detect_exp_l(s, l) and not detect_ins(s, l)


def detect_sub_syn(t1: "Term | Words", t2: "Term | Words", lex: SynonymLexicon) -> bool:
    """Synonym substitution: equal length, exactly one differing position,
    and the differing pair is in the lexicon."""
    a, b = _words(t1), _words(t2)
    if len(a) != len(b):
        return False
    diff = [(x, y) for x, y in zip(a, b) if x != y]
    if len(diff) != 1:
        return False
    x, y = diff[0]
    return lex.contains(x, y)


def detect_lr_exp(inner: "Term | Words", outer: "Term | Words") -> bool:
    """Left-right expansion: inner is a proper contiguous word-level
    substring of outer."""
    i, o = _words(inner), _words(outer)
    if not i or len(i) >= len(o):
        return False
    n = len(i)
    return any(o[p:p + n] == i for p in range(len(o) - n + 1))


def contains_or_equal(inner: Words, outer: Words) -> bool:
    """Contiguous word-level containment, equality allowed (the substring
    rule used when matching external-resource terms)."""
    i, o = tuple(inner), tuple(outer)
    if not i or len(i) > len(o):
        return False
    n = len(i)
    return any(o[p:p + n] == i for p in range(len(o) - n + 1))


def find_all_edges(inv: TermInventory, lex: SynonymLexicon) -> list[VariationEdge]:
    """Compute every variation edge over an inventory.

    Candidate pairs are generated through indexes (sub-window lookups, an
    endpoint-pair index and synonym substitutions); each candidate is then
    classified by the pure detectors, so the result equals the all-pairs
    brute force.  Returned in canonical (kind, a, b) order.
    """
    edges: set[VariationEdge] = set()

    def classify_expansion(short_id: int, long_id: int) -> None:
        s = inv.terms[short_id].words
        l = inv.terms[long_id].words
        if detect_exp_l(s, l):
            edges.add(VariationEdge(short_id, long_id, RelationKind.EXP_L))
        elif detect_ins(s, l):
            edges.add(VariationEdge(short_id, long_id, RelationKind.INS))
        elif detect_exp_r(s, l):
            edges.add(VariationEdge(short_id, long_id, RelationKind.EXP_R))

    # Sub-window lookups cover EXP_L, EXP_R and LR_EXP candidates.
    for term in inv:
        words = term.words
        n = len(words)
        for i in range(n):
            for j in range(i + 1, n + 1):
                if j - i == n:
                    continue
                inner_id = inv.lookup(words[i:j])
                if inner_id is None or inner_id == term.term_id:
                    continue
                edges.add(VariationEdge(inner_id, term.term_id, RelationKind.LR_EXP))
                if i == 0 or j == n:
                    classify_expansion(inner_id, term.term_id)

    # Endpoint-pair index covers INS candidates (non-contiguous subsequences).
    by_endpoints: dict[tuple[str, str], list[int]] = {}
    for term in inv:
        key = (term.words[0], term.words[-1])
        by_endpoints.setdefault(key, []).append(term.term_id)
    for group in by_endpoints.values():
        group.sort(key=lambda tid: len(inv.terms[tid].words))
        for ai in range(len(group)):
            for bi in range(len(group)):
                if ai == bi:
                    continue
                a, b = group[ai], group[bi]
                if len(inv.terms[a].words) < len(inv.terms[b].words):
                    classify_expansion(a, b)

    # Synonym substitution via exact lookups of the substituted sequence.
    for term in inv:
        words = term.words
        for pos, word in enumerate(words):
            for syn in lex.synonyms(word):
                other_id = inv.lookup(words[:pos] + (syn,) + words[pos + 1:])
                if other_id is not None and other_id != term.term_id:
                    a, b = min(term.term_id, other_id), max(term.term_id, other_id)
                    if detect_sub_syn(inv.terms[a].words, inv.terms[b].words, lex):
                        edges.add(VariationEdge(a, b, RelationKind.SUB_SYN))

    return sorted(edges, key=VariationEdge.sort_key)


def edges_to_tsv(edges: Iterable[VariationEdge]) -> str:
    lines = ["kind\tterm_id_a\tterm_id_b"]
    for e in sorted(edges, key=VariationEdge.sort_key):
        lines.append(f"{e.kind.tag}\t{e.a}\t{e.b}")
    return "\n".join(lines) + "\n"
