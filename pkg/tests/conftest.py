"""Shared fixtures: the worked-example corpus, synthetic vocabularies and
network builders used across the suite."""

from __future__ import annotations

import random
from io import StringIO
from pathlib import Path

import pytest

from termgraph import (
    TermNetwork,
    build_components,
    build_network,
    load_lexicon,
    parse_corpus,
)
from termgraph.relations import KIND_ORDER, RelationKind, VariationEdge
from termgraph.terms import intern

# Five documents rebuilding the worked variant examples: an insertion pair,
# a head expansion, a left expansion, a synonym substitution and a same-head
# pair that stays unlinked.  Hand trace: 9 terms, 3 COMP edges, 6 components.
EXAMPLE_CORPUS = """\
#DOC d1
#META title=Software engineering approaches
the/DET object/NOUN software/NOUN occurs/OTHER here/OTHER
object/NOUN oriented/ADJ software/NOUN is/OTHER studied/OTHER

#DOC d2
object/NOUN oriented/ADJ software/NOUN testing/NOUN matters/OTHER
we/OTHER review/OTHER object/NOUN software/NOUN again/OTHER

#DOC d3
bone/NOUN marrow/NOUN cell/NOUN counts/OTHER
immature/ADJ bone/NOUN marrow/NOUN cell/NOUN populations/OTHER grow/OTHER

#DOC d4
an/DET inflammatory/ADJ reaction/NOUN was/OTHER seen/OTHER
the/DET inflammatory/ADJ response/NOUN persisted/OTHER

#DOC d5
energy/NOUN balance/NOUN shifts/OTHER
heat/NOUN balance/NOUN holds/OTHER
"""

EXAMPLE_LEXICON = "reaction\tresponse\n"


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def example_docs():
    return parse_corpus(StringIO(EXAMPLE_CORPUS))


@pytest.fixture(scope="session")
def example_lexicon():
    return load_lexicon(StringIO(EXAMPLE_LEXICON), source_tag="fixture")


@pytest.fixture(scope="session")
def example_network(example_docs, example_lexicon) -> TermNetwork:
    return build_network(example_docs, example_lexicon)


def term_id_of(network: TermNetwork, text: str) -> int:
    tid = network.inventory.lookup(tuple(text.split()))
    assert tid is not None, f"fixture term missing: {text}"
    return tid


class FakeSpan:
    """Minimal span stand-in for interning synthetic vocabularies."""

    __slots__ = ("doc_id", "words", "surface")

    def __init__(self, words, doc_id="d0"):
        self.words = tuple(words)
        self.doc_id = doc_id
        self.surface = " ".join(words)


def make_inventory(word_seqs):
    return intern(FakeSpan(w) for w in word_seqs)


def make_network(word_seqs, edges, postings=None, docs=None) -> TermNetwork:
    """Assemble a network directly from a vocabulary and an edge list."""
    inventory = make_inventory(word_seqs)
    components = build_components(inventory, edges)
    return TermNetwork(
        inventory=inventory,
        edges=sorted(edges, key=VariationEdge.sort_key),
        components=components,
        postings=postings or {},
        docs=docs or {},
        build_meta={"config": {}, "counts": {}},
    )


# ---------------------------------------------------------------------------
# 50-document corpus + 30-term resource used by the stats pipeline checks

STATS_NOUNS = ["signal", "system", "acquisition", "traffic", "city", "datum",
               "bone", "marrow", "cell", "energy", "heat", "balance",
               "reaction", "response", "tumor", "proliferation", "activity"]
STATS_MODS = ["immature", "inflammatory", "oral", "digital", "rapid"]

STATS_RESOURCE_TERMS = [
    # 10 uniterms
    "signal", "system", "cell", "traffic", "acquisition",
    "energy", "balance", "marrow", "unseen", "datum",
    # 20 multiword terms, several present in the corpus, several absent
    "bone marrow cell", "energy balance", "heat balance", "traffic signal",
    "signal acquisition", "city traffic", "tumor cell", "cell proliferation",
    "inflammatory reaction", "immature bone marrow cell", "rapid system",
    "datum acquisition system", "signal system", "marrow cell", "heat energy",
    "absent phrase", "another missing term", "digital signal system",
    "proliferation activity", "oral tumor",
]


# phrase families with realistic variation links (adjectives tagged ADJ)
STATS_PHRASES = [
    "bone marrow cell", "immature/A bone marrow cell",
    "energy balance", "heat balance",
    "inflammatory/A reaction", "inflammatory/A response",
    "traffic signal", "city traffic signal",
    "city traffic signal datum acquisition system",
    "signal acquisition", "signal datum acquisition",
    "tumor cell", "oral/A tumor cell", "tumor cell proliferation",
    "datum acquisition system", "acquisition system",
    "cell proliferation", "cell proliferation activity",
    "rapid/A system", "digital/A signal system",
]


def _phrase_tokens(phrase: str) -> str:
    toks = []
    for word in phrase.split():
        if word.endswith("/A"):
            toks.append(f"{word[:-2]}/ADJ")
        else:
            toks.append(f"{word}/NOUN")
    return " ".join(toks)


def stats_corpus_text() -> str:
    rng = random.Random(101)
    blocks = []
    for i in range(50):
        sentences = []
        for _ in range(rng.randint(1, 3)):
            parts = [_phrase_tokens(rng.choice(STATS_PHRASES)), "occurs/OTHER"]
            if rng.random() < 0.5:
                parts.append(_phrase_tokens(rng.choice(STATS_PHRASES)))
                parts.append("too/OTHER")
            sentences.append(" ".join(parts))
        blocks.append(f"#DOC s{i:02d}\n" + "\n".join(sentences) + "\n")
    return "\n".join(blocks)


def random_vocab(rng: random.Random, n_terms: int, alphabet_size: int = 30,
                 max_len: int = 6, alphabet: list[str] | None = None) -> list[tuple[str, ...]]:
    """Distinct word sequences over a small alphabet, lengths 1..max_len.

    Biased toward shared suffixes/prefixes so expansion and insertion
    relations actually occur.
    """
    if alphabet is None:
        alphabet = [f"w{i:02d}" for i in range(alphabet_size)]
    vocab: set[tuple[str, ...]] = set()
    while len(vocab) < n_terms:
        if vocab and rng.random() < 0.5:
            base = list(rng.choice(sorted(vocab)))
            action = rng.random()
            if action < 0.4:  # left expansion candidate
                new = [rng.choice(alphabet)] + base
            elif action < 0.7 and len(base) >= 2:  # insertion candidate
                pos = rng.randrange(1, len(base))
                new = base[:pos] + [rng.choice(alphabet)] + base[pos:]
            else:  # head expansion candidate
                new = base + [rng.choice(alphabet)]
            if len(new) <= max_len:
                vocab.add(tuple(new))
            continue
        length = rng.randint(1, max_len)
        vocab.add(tuple(rng.choice(alphabet) for _ in range(length)))
    return sorted(vocab)


def random_syn_pairs(rng: random.Random, n_pairs: int, alphabet_size: int = 30):
    alphabet = [f"w{i:02d}" for i in range(alphabet_size)]
    pairs = set()
    while len(pairs) < n_pairs:
        a, b = rng.sample(alphabet, 2)
        pairs.add((min(a, b), max(a, b)))
    return sorted(pairs)


def random_comp_edges(rng: random.Random, n_nodes: int, n_edges: int):
    """Random COMP-kind edges over node ids (structure-only, for clustering
    and walk tests)."""
    comp_kinds = [k for k in KIND_ORDER if k.in_comp and k is not RelationKind.ORTH]
    edges = set()
    attempts = 0
    while len(edges) < n_edges and attempts < n_edges * 20:
        attempts += 1
        a, b = rng.sample(range(n_nodes), 2)
        kind = rng.choice(comp_kinds)
        if kind in (RelationKind.SUB_SYN, RelationKind.ORTH):
            a, b = min(a, b), max(a, b)
        edges.add(VariationEdge(a=a, b=b, kind=kind))
    return sorted(edges, key=VariationEdge.sort_key)
