"""Comparison of an external controlled vocabulary against the network.

Produces a report with five blocks: corpus occurrence counts per resource,
substring-expansion counts in both directions, a histogram of expansion
sizes, cumulative variation-chain reach, and uniterm-combination counts.

By default the network side of every cross comparison is its set of
multiword-term candidate labels (one per component); ``candidates_only=False``
switches to the full inventory.  Substring matching between the two
vocabularies allows exact equality: a resource term counts as matched when it
appears contiguously inside (or equals) a network term.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Iterable, Sequence, TextIO

from .corpus import Document
from .errors import EmptyAfterNormalization, MalformedResourceLine, UnsupportedFormat
from .network import TermNetwork, select_mwt_candidates
from .relations import contains_or_equal
from .terms import normalize

_BUCKET_LABELS = ("0", "1", "2", "3+")
_COMBO_LABELS = ("2", "3", "4", ">4")


@dataclass(frozen=True)
class ExternalResource:
    name: str
    terms: frozenset[tuple[str, ...]]

    @property
    def uniterms(self) -> frozenset[tuple[str, ...]]:
        return frozenset(t for t in self.terms if len(t) == 1)

    @property
    def mwts(self) -> frozenset[tuple[str, ...]]:
        return frozenset(t for t in self.terms if len(t) >= 2)

    @property
    def uniterm_words(self) -> frozenset[str]:
        return frozenset(t[0] for t in self.uniterms)


def load_resource(stream: TextIO | Iterable[str], name: str) -> ExternalResource:
    """Read one term per line, normalized and deduplicated."""
    terms: set[tuple[str, ...]] = set()
    for line_no, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            terms.add(normalize(line.split()))
        except EmptyAfterNormalization as exc:
            raise MalformedResourceLine(line_no, f"term is empty after normalization: {line!r}") from exc
    return ExternalResource(name=name, terms=frozenset(terms))


def resource_from_network(net: TermNetwork, candidates_only: bool = True,
                          min_component_size: int = 1) -> ExternalResource:
    """The network's own term list viewed as a resource (for Table-2-style
    occurrence rows)."""
    universe = network_term_universe(net, candidates_only, min_component_size)
    return ExternalResource(
        name="network",
        terms=frozenset(net.inventory.terms[tid].words for tid in universe),
    )


def network_term_universe(net: TermNetwork, candidates_only: bool = True,
                          min_component_size: int = 1) -> set[int]:
    """Which network terms take part in cross-resource comparisons."""
    if candidates_only:
        return select_mwt_candidates(net, min_component_size=min_component_size)
    return {t.term_id for t in net.inventory}


# ---------------------------------------------------------------------------
# occurrence block


@dataclass(frozen=True)
class OccurrenceRow:
    resource_name: str
    n_terms: int
    n_mwt: int
    matching_len_gt1: int
    matching_len_gt2: int
    docs_len_gt1: int
    docs_len_gt2: int
    max_frequency: int


def _doc_stream(doc: Document) -> list[str]:
    words: list[str] = []
    for tok in doc.tokens:
        try:
            words.extend(normalize([tok.lemma]))
        except EmptyAfterNormalization:
            continue
    return words


def _count_occurrences(term: tuple[str, ...], stream: Sequence[str]) -> int:
    n = len(term)
    if n == 0 or n > len(stream):
        return 0
    return sum(1 for i in range(len(stream) - n + 1) if tuple(stream[i:i + n]) == term)


def corpus_occurrence_stats(res: ExternalResource, docs: Sequence[Document]) -> OccurrenceRow:
    """Contiguous-match statistics of a resource against a corpus."""
    streams = {doc.doc_id: _doc_stream(doc) for doc in docs}
    word_sets = {doc_id: set(s) for doc_id, s in streams.items()}

    matching_gt1: set[tuple[str, ...]] = set()
    matching_gt2: set[tuple[str, ...]] = set()
    docs_gt1: set[str] = set()
    docs_gt2: set[str] = set()
    max_frequency = 0
    for term in res.terms:
        if len(term) < 2:
            continue
        total = 0
        term_words = set(term)
        for doc_id, stream in streams.items():
            if not term_words <= word_sets[doc_id]:
                continue
            count = _count_occurrences(term, stream)
            if count:
                total += count
                docs_gt1.add(doc_id)
                if len(term) > 2:
                    docs_gt2.add(doc_id)
        if total:
            matching_gt1.add(term)
            if len(term) > 2:
                matching_gt2.add(term)
            max_frequency = max(max_frequency, total)
    return OccurrenceRow(
        resource_name=res.name,
        n_terms=len(res.terms),
        n_mwt=len(res.mwts),
        matching_len_gt1=len(matching_gt1),
        matching_len_gt2=len(matching_gt2),
        docs_len_gt1=len(docs_gt1),
        docs_len_gt2=len(docs_gt2),
        max_frequency=max_frequency,
    )


# ---------------------------------------------------------------------------
# substring-expansion blocks


@dataclass(frozen=True)
class LrCrossBlock:
    # network terms containing (or equal to) at least one external MWT,
    # split by the network term's own arity
    net_expansion_terms_uniterm: int
    net_expansion_terms_mwt: int
    # external terms contained in at least one network term, by external arity
    ext_matched_uniterms: int
    ext_matched_mwts: int

    @property
    def net_expansion_terms_total(self) -> int:
        return self.net_expansion_terms_uniterm + self.net_expansion_terms_mwt


def _universe_words(net: TermNetwork, universe: Iterable[int]) -> dict[int, tuple[str, ...]]:
    return {tid: net.inventory.terms[tid].words for tid in universe}


def _matches_of(inner: tuple[str, ...], words_by_id: dict[int, tuple[str, ...]],
                index: dict[str, set[int]]) -> set[int]:
    if not inner:
        return set()
    candidates = index.get(inner[0], set())
    return {tid for tid in candidates if contains_or_equal(inner, words_by_id[tid])}


def _word_start_index(words_by_id: dict[int, tuple[str, ...]]) -> dict[str, set[int]]:
    index: dict[str, set[int]] = {}
    for tid, words in words_by_id.items():
        for w in set(words):
            index.setdefault(w, set()).add(tid)
    return index


def lr_exp_cross_stats(res: ExternalResource, net: TermNetwork,
                       candidates_only: bool = True) -> LrCrossBlock:
    """Substring containment counted in both directions, distinct terms."""
    words_by_id = _universe_words(net, network_term_universe(net, candidates_only))
    index = _word_start_index(words_by_id)

    expanders: set[int] = set()
    matched_mwts: set[tuple[str, ...]] = set()
    for mwt in res.mwts:
        hits = _matches_of(mwt, words_by_id, index)
        if hits:
            matched_mwts.add(mwt)
            expanders.update(hits)

    matched_uniterms: set[tuple[str, ...]] = set()
    for uni in res.uniterms:
        if _matches_of(uni, words_by_id, index):
            matched_uniterms.add(uni)

    uniterm_expanders = sum(1 for tid in expanders if len(words_by_id[tid]) == 1)
    return LrCrossBlock(
        net_expansion_terms_uniterm=uniterm_expanders,
        net_expansion_terms_mwt=len(expanders) - uniterm_expanders,
        ext_matched_uniterms=len(matched_uniterms),
        ext_matched_mwts=len(matched_mwts),
    )


@dataclass(frozen=True)
class AddedWordHistogram:
    """Expansion-size repartition over (external MWT, network term) pairs.

    Buckets by word-length difference are not mutually exclusive per term
    (one term may have matches at several differences), so each proportion
    row may sum to more than 1.
    """

    net_counts: dict[str, int]
    ext_counts: dict[str, int]
    net_involved: int
    ext_involved: int

    def net_proportions(self) -> dict[str, float]:
        d = self.net_involved or 1
        return {k: v / d for k, v in self.net_counts.items()}

    def ext_proportions(self) -> dict[str, float]:
        d = self.ext_involved or 1
        return {k: v / d for k, v in self.ext_counts.items()}


def _bucket(diff: int) -> str:
    return str(diff) if diff < 3 else "3+"


def added_word_histogram(res: ExternalResource, net: TermNetwork,
                         candidates_only: bool = True) -> AddedWordHistogram:
    words_by_id = _universe_words(net, network_term_universe(net, candidates_only))
    index = _word_start_index(words_by_id)

    net_by_bucket: dict[str, set[int]] = {b: set() for b in _BUCKET_LABELS}
    ext_by_bucket: dict[str, set[tuple[str, ...]]] = {b: set() for b in _BUCKET_LABELS}
    net_involved: set[int] = set()
    ext_involved: set[tuple[str, ...]] = set()
    for mwt in res.mwts:
        for tid in _matches_of(mwt, words_by_id, index):
            bucket = _bucket(len(words_by_id[tid]) - len(mwt))
            net_by_bucket[bucket].add(tid)
            ext_by_bucket[bucket].add(mwt)
            net_involved.add(tid)
            ext_involved.add(mwt)
    return AddedWordHistogram(
        net_counts={b: len(net_by_bucket[b]) for b in _BUCKET_LABELS},
        ext_counts={b: len(ext_by_bucket[b]) for b in _BUCKET_LABELS},
        net_involved=len(net_involved),
        ext_involved=len(ext_involved),
    )


# ---------------------------------------------------------------------------
# chain and combination blocks


@dataclass(frozen=True)
class ChainBlock:
    counts: dict[int, int]  # k -> cumulative distinct network terms


def chain_reach_stats(res: ExternalResource, net: TermNetwork, k_max: int = 3,
                      candidates_only: bool = True) -> ChainBlock:
    """Network terms reachable from external MWTs: substring seed match
    against the comparison universe, then up to k COMP edges; cumulative in
    k.  Walks may reach any inventory term (component members beyond the
    labels), so counts grow with k."""
    if not 0 <= k_max <= 5:
        raise ValueError(f"k_max must be in 0..5, got {k_max}")
    words_by_id = _universe_words(net, network_term_universe(net, candidates_only))
    index = _word_start_index(words_by_id)

    seeds: set[int] = set()
    for mwt in res.mwts:
        seeds.update(_matches_of(mwt, words_by_id, index))

    # multi-source BFS over the COMP graph
    depth = {tid: 0 for tid in seeds}
    frontier = list(seeds)
    level = 0
    while frontier and level < k_max:
        level += 1
        nxt = []
        for node in frontier:
            for nbr, _kind in net.comp_adj[node]:
                if nbr not in depth:
                    depth[nbr] = level
                    nxt.append(nbr)
        frontier = nxt

    counts = {}
    for k in range(k_max + 1):
        counts[k] = sum(1 for d in depth.values() if d <= k)
    return ChainBlock(counts=counts)


@dataclass(frozen=True)
class UnitermCombinationBlock:
    buckets: dict[str, int]       # "2", "3", "4", ">4" -> network term count
    total_terms: int              # network terms containing >= 2 uniterms
    involved_uniterms: int        # distinct external uniterms in those terms


def uniterm_combination_stats(res: ExternalResource, net: TermNetwork,
                              candidates_only: bool = True) -> UnitermCombinationBlock:
    words_by_id = _universe_words(net, network_term_universe(net, candidates_only))
    uniterm_words = res.uniterm_words
    buckets = {label: 0 for label in _COMBO_LABELS}
    involved: set[str] = set()
    total = 0
    for words in words_by_id.values():
        hits = set(words) & uniterm_words
        if len(hits) < 2:
            continue
        total += 1
        involved.update(hits)
        if len(hits) > 4:
            buckets[">4"] += 1
        else:
            buckets[str(len(hits))] += 1
    return UnitermCombinationBlock(
        buckets=buckets, total_terms=total, involved_uniterms=len(involved))


# ---------------------------------------------------------------------------
# full report


@dataclass
class ComparisonReport:
    resource_name: str
    occurrence: list[OccurrenceRow] = field(default_factory=list)
    lr: LrCrossBlock | None = None
    added_words: AddedWordHistogram | None = None
    chains: ChainBlock | None = None
    combinations: UnitermCombinationBlock | None = None


def build_report(
    net: TermNetwork,
    res: ExternalResource,
    docs: Sequence[Document] | None = None,
    k_max: int = 3,
    candidates_only: bool = True,
) -> ComparisonReport:
    """Compute every block; the occurrence rows need an evaluation corpus
    and are omitted when none is given."""
    report = ComparisonReport(resource_name=res.name)
    if docs is not None:
        net_res = resource_from_network(net, candidates_only)
        report.occurrence = [
            corpus_occurrence_stats(net_res, docs),
            corpus_occurrence_stats(res, docs),
        ]
    report.lr = lr_exp_cross_stats(res, net, candidates_only)
    report.added_words = added_word_histogram(res, net, candidates_only)
    report.chains = chain_reach_stats(res, net, k_max, candidates_only)
    report.combinations = uniterm_combination_stats(res, net, candidates_only)
    return report


def _fmt_prop(x: float) -> str:
    return f"{x:.4f}"


def render_report(report: ComparisonReport, format: str = "tsv") -> str:
    """Serialize a report deterministically as TSV or Markdown."""
    if format == "tsv":
        return _render_tsv(report)
    if format == "markdown":
        return _render_markdown(report)
    raise UnsupportedFormat(format)


def _render_tsv(report: ComparisonReport) -> str:
    out = io.StringIO()
    w = out.write
    w(f"# comparison report for resource: {report.resource_name}\n")
    w("# occurrence: contiguous matches of each vocabulary in the corpus\n")
    w("occurrence\tresource\tn_terms\tn_mwt\tmatching_len_gt1\tmatching_len_gt2"
      "\tdocs_len_gt1\tdocs_len_gt2\tmax_frequency\n")
    for row in report.occurrence:
        w(f"occurrence\t{row.resource_name}\t{row.n_terms}\t{row.n_mwt}"
          f"\t{row.matching_len_gt1}\t{row.matching_len_gt2}"
          f"\t{row.docs_len_gt1}\t{row.docs_len_gt2}\t{row.max_frequency}\n")
    if report.lr is not None:
        w("lr_expansion\tdirection\tuniterm\tmwt\n")
        w(f"lr_expansion\tnetwork_terms_expanding_resource_mwts"
          f"\t{report.lr.net_expansion_terms_uniterm}\t{report.lr.net_expansion_terms_mwt}\n")
        w(f"lr_expansion\tresource_terms_with_expansion_in_network"
          f"\t{report.lr.ext_matched_uniterms}\t{report.lr.ext_matched_mwts}\n")
    if report.added_words is not None:
        hist = report.added_words
        w("# added_words: buckets overlap per term, proportion rows may sum over 1\n")
        w("added_words\trow\t" + "\t".join(_BUCKET_LABELS) + "\n")
        w("added_words\tnetwork_term_count\t"
          + "\t".join(str(hist.net_counts[b]) for b in _BUCKET_LABELS) + "\n")
        w("added_words\tresource_term_count\t"
          + "\t".join(str(hist.ext_counts[b]) for b in _BUCKET_LABELS) + "\n")
        props_net, props_ext = hist.net_proportions(), hist.ext_proportions()
        w("added_words\tnetwork_term_proportion\t"
          + "\t".join(_fmt_prop(props_net[b]) for b in _BUCKET_LABELS) + "\n")
        w("added_words\tresource_term_proportion\t"
          + "\t".join(_fmt_prop(props_ext[b]) for b in _BUCKET_LABELS) + "\n")
    if report.chains is not None:
        ks = sorted(report.chains.counts)
        w("chain_reach\tvariations\t" + "\t".join(str(k) for k in ks) + "\n")
        w("chain_reach\tnetwork_terms\t"
          + "\t".join(str(report.chains.counts[k]) for k in ks) + "\n")
    if report.combinations is not None:
        combo = report.combinations
        w("uniterm_combinations\tuniterms\t" + "\t".join(_COMBO_LABELS) + "\n")
        w("uniterm_combinations\tnetwork_terms\t"
          + "\t".join(str(combo.buckets[b]) for b in _COMBO_LABELS) + "\n")
        w(f"uniterm_combinations\ttotal_terms\t{combo.total_terms}\n")
        w(f"uniterm_combinations\tinvolved_uniterms\t{combo.involved_uniterms}\n")
    return out.getvalue()


def _render_markdown(report: ComparisonReport) -> str:
    out = io.StringIO()
    w = out.write
    w(f"# Comparison report: {report.resource_name}\n\n")
    if report.occurrence:
        w("## Corpus occurrence\n\n")
        w("| resource | terms | MWT | matching >1 | matching >2 | docs >1 | docs >2 | max freq |\n")
        w("|---|---|---|---|---|---|---|---|\n")
        for row in report.occurrence:
            w(f"| {row.resource_name} | {row.n_terms} | {row.n_mwt} | {row.matching_len_gt1} "
              f"| {row.matching_len_gt2} | {row.docs_len_gt1} | {row.docs_len_gt2} "
              f"| {row.max_frequency} |\n")
        w("\n")
    if report.lr is not None:
        w("## Substring expansion (both directions)\n\n")
        w("| direction | uniterm | MWT |\n|---|---|---|\n")
        w(f"| network terms expanding resource MWTs | {report.lr.net_expansion_terms_uniterm} "
          f"| {report.lr.net_expansion_terms_mwt} |\n")
        w(f"| resource terms with an expansion in the network | {report.lr.ext_matched_uniterms} "
          f"| {report.lr.ext_matched_mwts} |\n\n")
    if report.added_words is not None:
        hist = report.added_words
        w("## Expansions by number of added words\n\n")
        w("Buckets overlap per term; proportion rows may sum to more than 1.\n\n")
        w("| row | " + " | ".join(_BUCKET_LABELS) + " |\n")
        w("|---|" + "---|" * len(_BUCKET_LABELS) + "\n")
        w("| network term count | " + " | ".join(str(hist.net_counts[b]) for b in _BUCKET_LABELS) + " |\n")
        w("| resource term count | " + " | ".join(str(hist.ext_counts[b]) for b in _BUCKET_LABELS) + " |\n")
        props_net, props_ext = hist.net_proportions(), hist.ext_proportions()
        w("| network term proportion | " + " | ".join(_fmt_prop(props_net[b]) for b in _BUCKET_LABELS) + " |\n")
        w("| resource term proportion | " + " | ".join(_fmt_prop(props_ext[b]) for b in _BUCKET_LABELS) + " |\n\n")
    if report.chains is not None:
        ks = sorted(report.chains.counts)
        w("## Variation-chain reach\n\n")
        w("| variations | " + " | ".join(str(k) for k in ks) + " |\n")
        w("|---|" + "---|" * len(ks) + "\n")
        w("| network terms | " + " | ".join(str(report.chains.counts[k]) for k in ks) + " |\n\n")
    if report.combinations is not None:
        combo = report.combinations
        w("## Uniterm combinations\n\n")
        w("| uniterms contained | " + " | ".join(_COMBO_LABELS) + " |\n")
        w("|---|" + "---|" * len(_COMBO_LABELS) + "\n")
        w("| network terms | " + " | ".join(str(combo.buckets[b]) for b in _COMBO_LABELS) + " |\n\n")
        w(f"Total network terms with several uniterms: {combo.total_terms}; "
          f"distinct uniterms involved: {combo.involved_uniterms}.\n")
    return out.getvalue()
