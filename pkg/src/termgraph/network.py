"""The terminological network: components, labels and persistence.

Terms are clustered into connected components under the undirected view of
the COMP edges (orthographic, synonym substitution, insertion, left
expansion).  Head expansions and plain substring links are kept in the edge
list but never merge components.  Each component is labelled by its member
with the highest COMP degree; ties go to the lexicographically smallest word
sequence.

The whole structure serializes to a single versioned JSON document whose
bytes are a pure function of the inputs, so identical builds are identical
files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Sequence

from .corpus import ComplexNpConfig, Document, extract_spans
from .errors import CorruptPayload, EmptyCorpus, FormatVersionMismatch
from .relations import (
    KIND_ORDER,
    RelationKind,
    SynonymLexicon,
    VariationEdge,
    find_all_edges,
)
from .terms import Term, TermInventory, intern

FORMAT_VERSION = 1


@dataclass(frozen=True)
class Component:
    comp_id: int
    member_ids: frozenset[int]
    label_id: int

    def __post_init__(self):
        if self.label_id not in self.member_ids:
            raise ValueError("label must be a member of its component")


@dataclass(frozen=True)
class BuildConfig:
    max_merge: int = 2
    min_component_size: int = 2
    max_docs: int | None = None

    @classmethod
    def from_file(cls, path: str | Path) -> "BuildConfig":
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        known = {k: raw[k] for k in ("max_merge", "min_component_size", "max_docs") if k in raw}
        return cls(**known)

    def to_dict(self) -> dict:
        return {
            "max_merge": self.max_merge,
            "min_component_size": self.min_component_size,
            "max_docs": self.max_docs,
        }


@dataclass(frozen=True)
class DocInfo:
    doc_id: str
    metadata: dict[str, str]
    n_tokens: int
    text: str


def label_component(member_ids: Iterable[int], edges: Iterable[VariationEdge],
                    inv: TermInventory) -> int:
    """Pick the component label: max distinct-neighbor COMP degree,
    ties broken by lexicographically smallest word sequence."""
    members = set(member_ids)
    neighbors: dict[int, set[int]] = {m: set() for m in members}
    for e in edges:
        if e.kind.in_comp and e.a in members and e.b in members:
            neighbors[e.a].add(e.b)
            neighbors[e.b].add(e.a)
    return min(members, key=lambda tid: (-len(neighbors[tid]), inv.terms[tid].words))


def build_components(inv: TermInventory, edges: Sequence[VariationEdge]) -> list[Component]:
    """Connected components of the undirected COMP graph (singletons kept).

    Implemented as an iterative depth-first traversal; components are
    numbered by their smallest member id.
    """
    adj: dict[int, list[int]] = {t.term_id: [] for t in inv}
    comp_edges = [e for e in edges if e.kind.in_comp]
    for e in comp_edges:
        adj[e.a].append(e.b)
        adj[e.b].append(e.a)

    seen: set[int] = set()
    raw_components: list[set[int]] = []
    for start in range(len(inv)):
        if start in seen:
            continue
        members = {start}
        seen.add(start)
        stack = [start]
        while stack:
            node = stack.pop()
            for nbr in adj[node]:
                if nbr not in seen:
                    seen.add(nbr)
                    members.add(nbr)
                    stack.append(nbr)
        raw_components.append(members)

    raw_components.sort(key=min)
    return [
        Component(comp_id=i, member_ids=frozenset(members),
                  label_id=label_component(members, comp_edges, inv))
        for i, members in enumerate(raw_components)
    ]


class TermNetwork:
    """Immutable network of terms, edges, components and postings."""

    def __init__(
        self,
        inventory: TermInventory,
        edges: Sequence[VariationEdge],
        components: Sequence[Component],
        postings: dict[int, dict[str, int]],
        docs: dict[str, DocInfo],
        build_meta: dict,
    ):
        self.inventory = inventory
        self.edges = tuple(edges)
        self.components = tuple(components)
        self.postings = postings
        self.docs = docs
        self.build_meta = build_meta

        self._component_of: dict[int, int] = {}
        for comp in self.components:
            for tid in comp.member_ids:
                self._component_of[tid] = comp.comp_id

        # adjacency caches, neighbors sorted for deterministic walks
        comp_adj: dict[int, list[tuple[int, RelationKind]]] = {t.term_id: [] for t in inventory}
        expr_adj: dict[int, list[tuple[int, RelationKind]]] = {t.term_id: [] for t in inventory}
        for e in self.edges:
            if e.kind.in_comp:
                comp_adj[e.a].append((e.b, e.kind))
                comp_adj[e.b].append((e.a, e.kind))
            elif e.kind is RelationKind.EXP_R:
                expr_adj[e.a].append((e.b, e.kind))
                expr_adj[e.b].append((e.a, e.kind))
        for table in (comp_adj, expr_adj):
            for lst in table.values():
                lst.sort(key=lambda pair: (pair[0], KIND_ORDER[pair[1]]))
        self.comp_adj = comp_adj
        self.expr_adj = expr_adj

    def component_of(self, term_id: int) -> int:
        return self._component_of[term_id]

    def component(self, comp_id: int) -> Component | None:
        if 0 <= comp_id < len(self.components):
            return self.components[comp_id]
        return None

    def term_doc_count(self, term_id: int) -> int:
        return len(self.postings.get(term_id, {}))

    def payload(self) -> dict:
        """Canonical JSON-ready content; excludes volatile build metadata."""
        inv_rows = [
            {
                "id": t.term_id,
                "words": list(t.words),
                "surfaces": sorted(t.surfaces),
                "freq_occurrences": t.freq_occurrences,
                "freq_docs": t.freq_docs,
            }
            for t in self.inventory
        ]
        edge_rows = [[e.kind.tag, e.a, e.b] for e in
                     sorted(self.edges, key=VariationEdge.sort_key)]
        comp_rows = [
            {"id": c.comp_id, "members": sorted(c.member_ids), "label": c.label_id}
            for c in self.components
        ]
        posting_rows = {
            str(tid): sorted(by_doc.items())
            for tid, by_doc in self.postings.items()
        }
        doc_rows = {
            d.doc_id: {"metadata": d.metadata, "n_tokens": d.n_tokens, "text": d.text}
            for d in self.docs.values()
        }
        meta = {k: v for k, v in self.build_meta.items() if k != "built_at"}
        return {
            "termgraph_version": FORMAT_VERSION,
            "meta": meta,
            "inventory": inv_rows,
            "edges": edge_rows,
            "components": comp_rows,
            "postings": posting_rows,
            "docs": doc_rows,
        }

    def structurally_equals(self, other: "TermNetwork") -> bool:
        return self.payload() == other.payload()

    def edge_counts(self) -> dict[str, int]:
        counts = {kind.tag: 0 for kind in KIND_ORDER}
        for e in self.edges:
            counts[e.kind.tag] += 1
        return counts

    def component_size_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for c in self.components:
            hist[len(c.member_ids)] = hist.get(len(c.member_ids), 0) + 1
        return dict(sorted(hist.items()))


def select_mwt_candidates(network: TermNetwork, min_component_size: int = 2) -> set[int]:
    """Multiword-term candidates: labels of sufficiently large components.

    A label qualifies when its component has at least ``min_component_size``
    members and the label itself has at least two words.
    """
    out = set()
    for comp in network.components:
        if len(comp.member_ids) < min_component_size:
            continue
        if len(network.inventory.terms[comp.label_id].words) >= 2:
            out.add(comp.label_id)
    return out


def build_network(
    docs: Sequence[Document],
    lexicon: SynonymLexicon | None = None,
    config: BuildConfig | None = None,
) -> TermNetwork:
    """Run the full pipeline: chunk, intern, link, cluster, index."""
    if not docs:
        raise EmptyCorpus("cannot build a network from zero documents")
    lexicon = lexicon or SynonymLexicon()
    config = config or BuildConfig()

    np_config = ComplexNpConfig(max_merge=config.max_merge)
    ordered = sorted(docs, key=lambda d: d.doc_id)
    spans = []
    for doc in ordered:
        spans.extend(extract_spans(doc, np_config))

    inventory = intern(spans)
    edges = find_all_edges(inventory, lexicon)
    components = build_components(inventory, edges)

    postings: dict[int, dict[str, int]] = {}
    for span in spans:
        tid = inventory.lookup(span.words)
        by_doc = postings.setdefault(tid, {})
        by_doc[span.doc_id] = by_doc.get(span.doc_id, 0) + 1

    doc_infos = {
        doc.doc_id: DocInfo(
            doc_id=doc.doc_id,
            metadata=dict(doc.metadata),
            n_tokens=len(doc.tokens),
            text=" ".join(t.surface for t in doc.tokens),
        )
        for doc in ordered
    }

    kind_counts = {kind.tag: 0 for kind in KIND_ORDER}
    for e in edges:
        kind_counts[e.kind.tag] += 1
    orth_merges = sum(max(0, len(t.surfaces) - 1) for t in inventory)
    hist: dict[int, int] = {}
    for c in components:
        hist[len(c.member_ids)] = hist.get(len(c.member_ids), 0) + 1

    build_meta = {
        "config": config.to_dict(),
        "counts": {
            "docs": len(ordered),
            "spans": len(spans),
            "terms": len(inventory),
            "components": len(components),
            "edges": kind_counts,
            "orth_merges": orth_merges,
            "component_size_histogram": {str(k): v for k, v in sorted(hist.items())},
        },
    }
    return TermNetwork(
        inventory=inventory,
        edges=edges,
        components=components,
        postings=postings,
        docs=doc_infos,
        build_meta=build_meta,
    )


def network_to_bytes(network: TermNetwork) -> bytes:
    payload = network.payload()
    return (json.dumps(payload, sort_keys=True, ensure_ascii=False,
                       separators=(",", ":")) + "\n").encode("utf-8")


def save_network(network: TermNetwork, sink: str | Path | IO[bytes]) -> None:
    data = network_to_bytes(network)
    if isinstance(sink, (str, Path)):
        Path(sink).write_bytes(data)
    else:
        sink.write(data)


def network_from_payload(payload: dict) -> TermNetwork:
    version = payload.get("termgraph_version")
    if version != FORMAT_VERSION:
        raise FormatVersionMismatch(version, FORMAT_VERSION)
    try:
        terms = []
        by_words: dict[tuple[str, ...], int] = {}
        word_index: dict[str, set[int]] = {}
        for row in payload["inventory"]:
            term = Term(
                term_id=row["id"],
                words=tuple(row["words"]),
                surfaces=frozenset(row["surfaces"]),
                freq_occurrences=row["freq_occurrences"],
                freq_docs=row["freq_docs"],
            )
            terms.append(term)
            by_words[term.words] = term.term_id
            for word in set(term.words):
                word_index.setdefault(word, set()).add(term.term_id)
        inventory = TermInventory(
            terms=tuple(terms),
            by_words=by_words,
            by_word={w: frozenset(s) for w, s in word_index.items()},
        )
        kind_by_tag = {k.tag: k for k in RelationKind}
        edges = [VariationEdge(a=a, b=b, kind=kind_by_tag[tag])
                 for tag, a, b in payload["edges"]]
        components = [
            Component(comp_id=row["id"], member_ids=frozenset(row["members"]),
                      label_id=row["label"])
            for row in payload["components"]
        ]
        postings = {
            int(tid): {doc_id: count for doc_id, count in rows}
            for tid, rows in payload["postings"].items()
        }
        docs = {
            doc_id: DocInfo(doc_id=doc_id, metadata=row["metadata"],
                            n_tokens=row["n_tokens"], text=row["text"])
            for doc_id, row in payload["docs"].items()
        }
        meta = payload["meta"]
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptPayload(0, f"bad network payload: {exc}") from exc
    return TermNetwork(
        inventory=inventory,
        edges=edges,
        components=components,
        postings=postings,
        docs=docs,
        build_meta=meta,
    )


def load_network(source: str | Path | IO[bytes]) -> TermNetwork:
    if isinstance(source, (str, Path)):
        data = Path(source).read_bytes()
    else:
        data = source.read()
    try:
        payload = json.loads(data.decode("utf-8"))
    except UnicodeDecodeError as exc:
        raise CorruptPayload(exc.start, "not valid UTF-8") from exc
    except json.JSONDecodeError as exc:
        raise CorruptPayload(exc.pos, "not valid JSON") from exc
    if not isinstance(payload, dict):
        raise CorruptPayload(0, "payload is not an object")
    return network_from_payload(payload)


def stats_sidecar_tsv(network: TermNetwork) -> str:
    """Per-kind edge counts plus the component-size histogram."""
    counts = network.build_meta.get("counts", {})
    lines = ["section\tkey\tvalue"]
    lines.append(f"totals\tdocs\t{counts.get('docs', len(network.docs))}")
    lines.append(f"totals\tterms\t{len(network.inventory)}")
    lines.append(f"totals\tcomponents\t{len(network.components)}")
    lines.append(f"totals\torth_merges\t{counts.get('orth_merges', 0)}")
    for tag, value in network.edge_counts().items():
        lines.append(f"edges\t{tag}\t{value}")
    for size, value in network.component_size_histogram().items():
        lines.append(f"component_size\t{size}\t{value}")
    return "\n".join(lines) + "\n"
