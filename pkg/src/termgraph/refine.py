"""Query refinement over a built term network.

A query resolves to an inventory term when its normalized words match
exactly; refinement then walks variation edges (direct variants, bounded
chains) or, for queries outside the corpus vocabulary, falls back to
substring expansion and uniterm combination, which need no exact match.

Suggestions are ranked by semantic tightness of the connecting relation:
orthographic < synonym substitution < insertion < left expansion < head
expansion < plain substring, with path length, document count and the word
sequence as tie breakers.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .errors import UnknownTerm
from .network import TermNetwork
from .relations import RelationKind, contains_or_equal
from .terms import normalize


class QueryMode(Enum):
    EXACT = "exact"
    VARIANTS = "variants"
    LR_EXPAND = "lr_expand"
    CHAIN = "chain"
    UNITERM_COMBINE = "uniterm_combine"
    AUTO = "auto"


MAX_CHAIN_DEPTH = 5

# Rank classes, tightest first.  Exact matches sort before everything;
# uniterm combinations carry no edge and sort after substring matches.
EXACT_CLASS = -1
COMBINE_CLASS = 6
TIGHTNESS = {
    RelationKind.ORTH: 0,
    RelationKind.SUB_SYN: 1,
    RelationKind.INS: 2,
    RelationKind.EXP_L: 3,
    RelationKind.EXP_R: 4,
    RelationKind.LR_EXP: 5,
}


@dataclass(frozen=True)
class Query:
    raw: str
    words: tuple[str, ...]
    mode: QueryMode = QueryMode.AUTO
    k: int = 2

    @classmethod
    def parse(cls, raw: str, mode: QueryMode = QueryMode.AUTO, k: int = 2) -> "Query":
        if not 0 <= k <= MAX_CHAIN_DEPTH:
            raise ValueError(f"chain depth must be in 0..{MAX_CHAIN_DEPTH}, got {k}")
        return cls(raw=raw, words=normalize(raw.split()), mode=mode, k=k)


@dataclass(frozen=True)
class RefinementSuggestion:
    term_id: int
    words: tuple[str, ...]
    relation_path: tuple[RelationKind, ...]
    score: int
    doc_count: int
    component_id: int
    added_words: int | None = None
    uniterm_hits: int | None = None

    @property
    def path_tags(self) -> tuple[str, ...]:
        return tuple(kind.tag for kind in self.relation_path)


def _path_class(path: Sequence[RelationKind], uniterm_hits: int | None = None) -> int:
    if uniterm_hits is not None:
        return COMBINE_CLASS
    if not path:
        return EXACT_CLASS
    return max(TIGHTNESS[kind] for kind in path)


def _rank_key(s: RefinementSuggestion):
    cls = _path_class(s.relation_path, s.uniterm_hits)
    return (cls, len(s.relation_path), -s.doc_count, s.words)


def _make(net: TermNetwork, term_id: int, path: Sequence[RelationKind],
          added_words: int | None = None, uniterm_hits: int | None = None) -> RefinementSuggestion:
    path = tuple(path)
    cls = _path_class(path, uniterm_hits)
    return RefinementSuggestion(
        term_id=term_id,
        words=net.inventory.terms[term_id].words,
        relation_path=path,
        score=cls * 10 + min(len(path), 9),
        doc_count=net.term_doc_count(term_id),
        component_id=net.component_of(term_id),
        added_words=added_words,
        uniterm_hits=uniterm_hits,
    )


def rank_suggestions(suggestions: Iterable[RefinementSuggestion]) -> list[RefinementSuggestion]:
    """Deterministic total order: tightness class, path length, document
    count (descending), then words."""
    return sorted(suggestions, key=_rank_key)


def resolve(query: Query, net: TermNetwork) -> int | None:
    """Exact lookup of the normalized query words."""
    return net.inventory.lookup(query.words)


def _check_term(net: TermNetwork, term_id: int) -> None:
    if net.inventory.get(term_id) is None:
        raise UnknownTerm(term_id)


def suggest_variants(term_id: int, net: TermNetwork) -> list[RefinementSuggestion]:
    """Direct variants: COMP neighbors plus head-expansion neighbors."""
    _check_term(net, term_id)
    out = []
    for nbr, kind in net.comp_adj[term_id]:
        out.append(_make(net, nbr, [kind]))
    for nbr, kind in net.expr_adj[term_id]:
        out.append(_make(net, nbr, [kind]))
    return rank_suggestions(out)


def suggest_lr_expansions(words: Sequence[str], net: TermNetwork) -> list[RefinementSuggestion]:
    """Inventory terms of which the query is a contiguous word-level
    substring; the query itself is excluded.  Results are grouped by the
    number of added words (ascending), then ranked within a group."""
    words = tuple(words)
    if not words:
        return []
    candidates = net.inventory.terms_containing(words[0])
    out = []
    for tid in candidates:
        term_words = net.inventory.terms[tid].words
        if len(term_words) <= len(words):
            continue
        if contains_or_equal(words, term_words):
            out.append(_make(net, tid, [RelationKind.LR_EXP],
                             added_words=len(term_words) - len(words)))
    return sorted(out, key=lambda s: (s.added_words,) + _rank_key(s))


def suggest_chain(term_id: int, k: int, net: TermNetwork) -> list[RefinementSuggestion]:
    """Terms reachable by at most k COMP edges, each with one shortest
    relation path; k = 0 yields only the term itself."""
    _check_term(net, term_id)
    if not 0 <= k <= MAX_CHAIN_DEPTH:
        raise ValueError(f"chain depth must be in 0..{MAX_CHAIN_DEPTH}, got {k}")
    paths: dict[int, tuple[RelationKind, ...]] = {term_id: ()}
    frontier = deque([(term_id, 0)])
    while frontier:
        node, depth = frontier.popleft()
        if depth == k:
            continue
        for nbr, kind in net.comp_adj[node]:
            if nbr not in paths:
                paths[nbr] = paths[node] + (kind,)
                frontier.append((nbr, depth + 1))
    return rank_suggestions(_make(net, tid, path) for tid, path in paths.items())


def suggest_uniterm_combinations(
    uniterm_set: Iterable[str],
    net: TermNetwork,
    min_hits: int = 2,
) -> list[RefinementSuggestion]:
    """Inventory terms containing at least ``min_hits`` distinct words of
    the given set, annotated with the hit count."""
    if min_hits < 2:
        raise ValueError("min_hits must be at least 2")
    uniterm_set = set(uniterm_set)
    hit_count: dict[int, int] = {}
    for word in uniterm_set:
        for tid in net.inventory.terms_containing(word):
            hit_count[tid] = hit_count.get(tid, 0) + 1
    out = [
        _make(net, tid, (), uniterm_hits=hits)
        for tid, hits in hit_count.items()
        if hits >= min_hits
    ]
    return rank_suggestions(out)


def fetch_documents(
    term_id: int,
    net: TermNetwork,
    limit: int | None = None,
) -> list[tuple[str, int, dict[str, str]]]:
    """Documents containing the term, by occurrence count then doc id."""
    _check_term(net, term_id)
    rows = sorted(net.postings.get(term_id, {}).items(), key=lambda kv: (-kv[1], kv[0]))
    if limit is not None:
        rows = rows[:limit]
    return [(doc_id, count, net.docs[doc_id].metadata) for doc_id, count in rows]


def _dedupe_best(suggestions: Iterable[RefinementSuggestion]) -> list[RefinementSuggestion]:
    best: dict[int, RefinementSuggestion] = {}
    for s in suggestions:
        cur = best.get(s.term_id)
        if cur is None or _rank_key(s) < _rank_key(cur):
            best[s.term_id] = s
    return rank_suggestions(best.values())


def auto_refine(query: Query, net: TermNetwork) -> list[RefinementSuggestion]:
    """Resolved queries get variants plus a 2-step chain; unresolved ones
    fall back to substring expansion and uniterm combinations."""
    term_id = resolve(query, net)
    if term_id is not None:
        return _dedupe_best(
            suggest_variants(term_id, net) + suggest_chain(term_id, 2, net))
    combos = (suggest_uniterm_combinations(set(query.words), net)
              if len(set(query.words)) >= 2 else [])
    return _dedupe_best(suggest_lr_expansions(query.words, net) + combos)


def refine(query: Query, net: TermNetwork) -> list[RefinementSuggestion]:
    """Dispatch a query according to its mode."""
    if query.mode is QueryMode.AUTO:
        return auto_refine(query, net)
    if query.mode is QueryMode.LR_EXPAND:
        return suggest_lr_expansions(query.words, net)
    if query.mode is QueryMode.UNITERM_COMBINE:
        uniterm_set = set(query.words)
        if len(uniterm_set) < 2:
            return []
        return suggest_uniterm_combinations(uniterm_set, net)
    term_id = resolve(query, net)
    if term_id is None:
        return []
    if query.mode is QueryMode.EXACT:
        return [_make(net, term_id, ())]
    if query.mode is QueryMode.VARIANTS:
        return suggest_variants(term_id, net)
    if query.mode is QueryMode.CHAIN:
        return suggest_chain(term_id, query.k, net)
    raise ValueError(f"unhandled query mode {query.mode}")
