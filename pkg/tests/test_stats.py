"""Cross-resource comparison statistics (the five report blocks)."""

import random
from io import StringIO

import pytest

from termgraph import MalformedResourceLine, UnsupportedFormat, build_network, load_resource, parse_corpus
from termgraph.relations import SynonymLexicon
from termgraph.stats import (
    added_word_histogram,
    build_report,
    chain_reach_stats,
    corpus_occurrence_stats,
    lr_exp_cross_stats,
    network_term_universe,
    render_report,
    resource_from_network,
    uniterm_combination_stats,
)

from oracles import (
    oracle_bfs_depths,
    oracle_contains_or_equal,
    oracle_doc_stream,
    oracle_occurrence_count,
)

from conftest import STATS_NOUNS, STATS_RESOURCE_TERMS, stats_corpus_text

_NOUNS = STATS_NOUNS
_RESOURCE_TERMS = STATS_RESOURCE_TERMS


@pytest.fixture(scope="module")
def stats_corpus():
    return parse_corpus(StringIO(stats_corpus_text()))


@pytest.fixture(scope="module")
def stats_network(stats_corpus):
    lex = SynonymLexicon.from_pairs([("reaction", "response"), ("energy", "heat")])
    return build_network(stats_corpus, lex)


@pytest.fixture(scope="module")
def stats_resource():
    return load_resource(StringIO("\n".join(_RESOURCE_TERMS) + "\n"), name="reference")


def _universe_words(net):
    return {tid: net.inventory.terms[tid].words
            for tid in network_term_universe(net, candidates_only=True)}


class TestLoadResource:
    def test_partition(self):
        res = load_resource(StringIO("signal\nbone marrow\n"), name="r")
        assert res.uniterms == {("signal",)}
        assert res.mwts == {("bone", "marrow")}

    def test_duplicates_collapse(self):
        res = load_resource(StringIO("signal\nSignals\nsignal\n"), name="r")
        assert len(res.terms) == 1

    def test_hyphen_becomes_mwt(self):
        res = load_resource(StringIO("bone-marrow\n"), name="r")
        assert res.mwts == {("bone", "marrow")}

    def test_malformed_line(self):
        with pytest.raises(MalformedResourceLine) as err:
            load_resource(StringIO("fine\n---\n"), name="r")
        assert err.value.line_no == 2

    def test_counts_match_sort_unique_oracle(self):
        rng = random.Random(103)
        lines = [" ".join(rng.choice(_NOUNS) for _ in range(rng.randint(1, 3)))
                 for _ in range(100)]
        res = load_resource(StringIO("\n".join(lines) + "\n"), name="r")
        want = {tuple(line.split()) for line in lines}
        assert res.terms == want


class TestCorpusOccurrence:
    def test_hand_built_counts(self):
        corpus = parse_corpus(StringIO(
            "#DOC a\nbone/NOUN marrow/NOUN cell/NOUN lines/OTHER\n"
            "bone/NOUN marrow/NOUN cell/NOUN data/OTHER\n\n"
            "#DOC b\nthe/DET bone/NOUN marrow/NOUN cell/NOUN once/OTHER\n\n"
            "#DOC c\nnothing/OTHER here/OTHER\n"))
        res = load_resource(StringIO("bone marrow cell\n"), name="r")
        row = corpus_occurrence_stats(res, corpus)
        assert row.matching_len_gt1 == 1
        assert row.matching_len_gt2 == 1
        assert row.docs_len_gt1 == 2
        assert row.max_frequency == 3

    def test_no_hits_zeros(self, stats_corpus):
        res = load_resource(StringIO("absent phrase\n"), name="r")
        row = corpus_occurrence_stats(res, stats_corpus)
        assert (row.matching_len_gt1, row.docs_len_gt1, row.max_frequency) == (0, 0, 0)

    def test_uniterms_not_counted(self, stats_corpus):
        res = load_resource(StringIO("signal\n"), name="r")
        row = corpus_occurrence_stats(res, stats_corpus)
        assert row.n_mwt == 0
        assert row.matching_len_gt1 == 0

    def test_matches_brute_force_scan(self, stats_corpus, stats_resource):
        row = corpus_occurrence_stats(stats_resource, stats_corpus)
        streams = {d.doc_id: oracle_doc_stream(d) for d in stats_corpus}
        matching1, matching2, docs1, docs2, max_freq = set(), set(), set(), set(), 0
        for term in stats_resource.terms:
            if len(term) < 2:
                continue
            total = 0
            for doc_id, stream in streams.items():
                c = oracle_occurrence_count(term, stream)
                if c:
                    total += c
                    docs1.add(doc_id)
                    if len(term) > 2:
                        docs2.add(doc_id)
            if total:
                matching1.add(term)
                if len(term) > 2:
                    matching2.add(term)
                max_freq = max(max_freq, total)
        assert row.matching_len_gt1 == len(matching1)
        assert row.matching_len_gt2 == len(matching2)
        assert row.docs_len_gt1 == len(docs1)
        assert row.docs_len_gt2 == len(docs2)
        assert row.max_frequency == max_freq


class TestLrCross:
    def test_uniterm_contained_in_network_term(self):
        corpus = parse_corpus(StringIO(
            "#DOC a\ncity/NOUN traffic/NOUN signal/NOUN\n"
            "city/NOUN traffic/NOUN\n"))
        net = build_network(corpus)
        res = load_resource(StringIO("signal\n"), name="r")
        block = lr_exp_cross_stats(res, net, candidates_only=False)
        assert block.ext_matched_uniterms == 1

    def test_network_uniterm_row_structurally_zero(self, stats_network, stats_resource):
        # MWT candidates have >= 2 words, and a network term must contain a
        # whole external MWT to count, so the uniterm row cannot fire
        block = lr_exp_cross_stats(stats_resource, stats_network)
        assert block.net_expansion_terms_uniterm == 0

    def test_matches_all_pairs_oracle(self, stats_network, stats_resource):
        words_by_id = _universe_words(stats_network)
        block = lr_exp_cross_stats(stats_resource, stats_network)

        expanders = set()
        matched_mwts = set()
        for mwt in stats_resource.mwts:
            for tid, words in words_by_id.items():
                if oracle_contains_or_equal(mwt, words):
                    expanders.add(tid)
                    matched_mwts.add(mwt)
        matched_unis = {
            uni for uni in stats_resource.uniterms
            if any(oracle_contains_or_equal(uni, words) for words in words_by_id.values())
        }
        assert block.net_expansion_terms_mwt == sum(
            1 for tid in expanders if len(words_by_id[tid]) >= 2)
        assert block.net_expansion_terms_uniterm == sum(
            1 for tid in expanders if len(words_by_id[tid]) == 1)
        assert block.ext_matched_mwts == len(matched_mwts)
        assert block.ext_matched_uniterms == len(matched_unis)


class TestAddedWordHistogram:
    def test_exact_equality_only(self):
        corpus = parse_corpus(StringIO(
            "#DOC a\nenergy/NOUN balance/NOUN\nheat/NOUN balance/NOUN\n"))
        lex = SynonymLexicon.from_pairs([("energy", "heat")])
        net = build_network(corpus, lex)
        res = load_resource(StringIO("energy balance\n"), name="r")
        hist = added_word_histogram(res, net)
        assert hist.ext_counts == {"0": 1, "1": 0, "2": 0, "3+": 0}
        assert hist.net_counts["0"] == 1

    def test_one_word_expansion_fixture(self):
        corpus = parse_corpus(StringIO(
            "#DOC a\nbone/NOUN marrow/NOUN cell/NOUN\n"
            "immature/ADJ bone/NOUN marrow/NOUN cell/NOUN\n"))
        net = build_network(corpus)
        res = load_resource(StringIO("bone marrow cell\n"), name="r")
        hist = added_word_histogram(res, net)
        # label "bone marrow cell" is the only candidate: one exact match
        assert hist.ext_counts["0"] == 1
        full = added_word_histogram(res, net, candidates_only=False)
        assert full.ext_counts["0"] == 1 and full.ext_counts["1"] == 1

    def test_buckets_not_exclusive(self, stats_network, stats_resource):
        hist = added_word_histogram(stats_resource, stats_network)
        assert sum(hist.ext_counts.values()) >= hist.ext_involved

    def test_matches_pair_enumeration(self, stats_network, stats_resource):
        words_by_id = _universe_words(stats_network)
        hist = added_word_histogram(stats_resource, stats_network)
        buckets_net = {"0": set(), "1": set(), "2": set(), "3+": set()}
        buckets_ext = {"0": set(), "1": set(), "2": set(), "3+": set()}
        for mwt in stats_resource.mwts:
            for tid, words in words_by_id.items():
                if oracle_contains_or_equal(mwt, words):
                    d = len(words) - len(mwt)
                    key = str(d) if d < 3 else "3+"
                    buckets_net[key].add(tid)
                    buckets_ext[key].add(mwt)
        assert hist.net_counts == {k: len(v) for k, v in buckets_net.items()}
        assert hist.ext_counts == {k: len(v) for k, v in buckets_ext.items()}
        involved_net = set().union(*buckets_net.values()) if any(buckets_net.values()) else set()
        assert hist.net_involved == len(involved_net)


class TestChainReach:
    def test_k0_equals_substring_count(self, stats_network, stats_resource):
        block = chain_reach_stats(stats_resource, stats_network, k_max=3)
        lr = lr_exp_cross_stats(stats_resource, stats_network)
        assert block.counts[0] == lr.net_expansion_terms_total

    def test_monotone(self, stats_network, stats_resource):
        block = chain_reach_stats(stats_resource, stats_network, k_max=3)
        values = [block.counts[k] for k in sorted(block.counts)]
        assert values == sorted(values)

    def test_full_component_reached_at_large_k(self):
        corpus = parse_corpus(StringIO(
            "#DOC a\nbone/NOUN marrow/NOUN cell/NOUN\n"
            "immature/ADJ bone/NOUN marrow/NOUN cell/NOUN\n"
            "young/ADJ immature/ADJ bone/NOUN marrow/NOUN cell/NOUN\n"))
        net = build_network(corpus)
        res = load_resource(StringIO("bone marrow cell\n"), name="r")
        block = chain_reach_stats(res, net, k_max=3, candidates_only=False)
        assert block.counts[3] == 3  # the whole chain component

    def test_matches_seeded_bfs_oracle(self, stats_network, stats_resource):
        words_by_id = _universe_words(stats_network)
        block = chain_reach_stats(stats_resource, stats_network, k_max=3)
        seeds = {
            tid for tid, words in words_by_id.items()
            if any(oracle_contains_or_equal(mwt, words) for mwt in stats_resource.mwts)
        }
        adjacency = {tid: [n for n, _ in nbrs]
                     for tid, nbrs in stats_network.comp_adj.items()}
        depths = oracle_bfs_depths(adjacency, seeds, 3)
        for k in range(4):
            want = sum(1 for d in depths.values() if d <= k)
            assert block.counts[k] == want


class TestUnitermCombinations:
    def test_bucket_of_four_uniterms(self):
        corpus = parse_corpus(StringIO(
            "#DOC a\ncity/NOUN traffic/NOUN signal/NOUN datum/NOUN acquisition/NOUN system/NOUN\n"
            "city/NOUN traffic/NOUN signal/NOUN datum/NOUN acquisition/NOUN system/NOUN design/NOUN\n"))
        net = build_network(corpus)
        res = load_resource(StringIO("acquisition\nsignal\nsystem\ntraffic\n"), name="r")
        block = uniterm_combination_stats(res, net, candidates_only=False)
        assert block.buckets["4"] >= 1
        assert block.involved_uniterms == 4

    def test_resource_without_uniterms(self, stats_network):
        res = load_resource(StringIO("bone marrow cell\n"), name="r")
        block = uniterm_combination_stats(res, stats_network)
        assert block.buckets == {"2": 0, "3": 0, "4": 0, ">4": 0}
        assert block.total_terms == 0

    def test_matches_set_intersection_oracle(self, stats_network, stats_resource):
        words_by_id = _universe_words(stats_network)
        block = uniterm_combination_stats(stats_resource, stats_network)
        uniterm_words = {t[0] for t in stats_resource.uniterms}
        buckets = {"2": 0, "3": 0, "4": 0, ">4": 0}
        involved = set()
        total = 0
        for words in words_by_id.values():
            hits = set(words) & uniterm_words
            if len(hits) >= 2:
                total += 1
                involved |= hits
                buckets["2" if len(hits) == 2 else
                        "3" if len(hits) == 3 else
                        "4" if len(hits) == 4 else ">4"] += 1
        assert block.buckets == buckets
        assert block.total_terms == total
        assert block.involved_uniterms == len(involved)


class TestReportRendering:
    def test_unsupported_format(self, stats_network, stats_resource):
        report = build_report(stats_network, stats_resource)
        with pytest.raises(UnsupportedFormat):
            render_report(report, format="xml")

    def test_deterministic(self, stats_network, stats_resource, stats_corpus):
        r1 = render_report(build_report(stats_network, stats_resource, docs=stats_corpus))
        r2 = render_report(build_report(stats_network, stats_resource, docs=stats_corpus))
        assert r1 == r2

    def test_headers_only_for_empty_resource(self, stats_network):
        res = load_resource(StringIO("unmatched\n"), name="empty-ish")
        text = render_report(build_report(stats_network, res))
        assert "lr_expansion\tdirection" in text
        assert "chain_reach\tvariations" in text

    def test_occurrence_block_needs_corpus(self, stats_network, stats_resource):
        without = build_report(stats_network, stats_resource)
        assert without.occurrence == []
        # network row is rendered alongside the resource row when given
        assert len(build_report(stats_network, stats_resource,
                                docs=[]).occurrence) == 2

    def test_network_pseudo_resource(self, stats_network):
        res = resource_from_network(stats_network)
        assert res.name == "network"
        assert all(len(t) >= 2 for t in res.terms)

    def test_markdown_contains_tables(self, stats_network, stats_resource, stats_corpus):
        text = render_report(build_report(stats_network, stats_resource, docs=stats_corpus),
                             format="markdown")
        assert "## Corpus occurrence" in text
        assert "| network terms |" in text
