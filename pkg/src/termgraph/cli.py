"""Command line interface: extract, build, refine, stats, serve.

Exit codes follow a stable contract: 0 success, 1 empty result, 2 input or
usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .corpus import ParseLimits, load_tag_map, parse_corpus
from .errors import TermgraphError
from .network import (
    BuildConfig,
    build_network,
    load_network,
    save_network,
    stats_sidecar_tsv,
)
from .refine import Query, QueryMode, refine
from .relations import SynonymLexicon, load_lexicon
from .stats import build_report, load_resource, render_report
from .terms import intern, inventory_to_tsv

EXIT_OK = 0
EXIT_EMPTY = 1
EXIT_ERROR = 2


def _read_corpus(corpus_path: str, tag_map_path: str | None, max_docs: int | None = None):
    tag_map = None
    if tag_map_path:
        if tag_map_path == "penn":
            from .corpus import PENN_TAG_MAP
            tag_map = dict(PENN_TAG_MAP)
        else:
            with open(tag_map_path, encoding="utf-8") as fh:
                tag_map = load_tag_map(fh)
    with open(corpus_path, encoding="utf-8") as fh:
        return parse_corpus(fh, tag_map=tag_map, limits=ParseLimits(max_docs=max_docs))


def cmd_extract(args) -> int:
    from .corpus import ComplexNpConfig, extract_spans

    docs = _read_corpus(args.corpus, args.tag_map, args.max_docs)
    config = ComplexNpConfig(max_merge=args.max_merge)
    spans = []
    for doc in sorted(docs, key=lambda d: d.doc_id):
        spans.extend(extract_spans(doc, config))
    inventory = intern(spans)
    Path(args.out).write_text(inventory_to_tsv(inventory), encoding="utf-8")
    print(f"documents\t{len(docs)}")
    print(f"noun_phrases\t{len(spans)}")
    print(f"distinct_terms\t{len(inventory)}")
    print(f"inventory\t{args.out}")
    return EXIT_OK


def cmd_build(args) -> int:
    config = BuildConfig.from_file(args.config) if args.config else BuildConfig()
    if args.max_docs is not None:
        config = BuildConfig(max_merge=config.max_merge,
                             min_component_size=config.min_component_size,
                             max_docs=args.max_docs)
    docs = _read_corpus(args.corpus, args.tag_map, config.max_docs)
    lexicon = SynonymLexicon()
    if args.lexicon:
        with open(args.lexicon, encoding="utf-8") as fh:
            lexicon = load_lexicon(fh, source_tag=args.lexicon)
    network = build_network(docs, lexicon, config)
    save_network(network, args.out)
    sidecar = Path(args.out).with_suffix(Path(args.out).suffix + ".stats.tsv")
    sidecar.write_text(stats_sidecar_tsv(network), encoding="utf-8")
    counts = network.build_meta["counts"]
    print(f"terms\t{counts['terms']}")
    print(f"components\t{counts['components']}")
    print(f"network\t{args.out}")
    print(f"sidecar\t{sidecar}")
    return EXIT_OK


def _network_path(args) -> str:
    path = args.network or os.environ.get("TERMGRAPH_NETWORK")
    if not path:
        raise TermgraphError("no network path: pass --network or set TERMGRAPH_NETWORK")
    return path


def cmd_refine(args) -> int:
    network = load_network(_network_path(args))
    query = Query.parse(args.query, mode=QueryMode(args.mode), k=args.k)
    suggestions = refine(query, network)
    if args.limit is not None:
        suggestions = suggestions[:args.limit]
    if not suggestions:
        print("no suggestions", file=sys.stderr)
        return EXIT_EMPTY
    print("words\trelation_path\tscore\tdoc_count")
    for s in suggestions:
        path = "+".join(s.path_tags) or "exact"
        print(f"{' '.join(s.words)}\t{path}\t{s.score}\t{s.doc_count}")
    return EXIT_OK


def cmd_stats(args) -> int:
    network = load_network(_network_path(args))
    with open(args.resource, encoding="utf-8") as fh:
        resource = load_resource(fh, name=Path(args.resource).stem)
    docs = None
    if args.corpus:
        docs = _read_corpus(args.corpus, args.tag_map)
    report = build_report(network, resource, docs=docs, k_max=args.k_max,
                          candidates_only=not args.all_terms)
    rendered = render_report(report, format=args.format)
    if args.out and args.out != "-":
        Path(args.out).write_text(rendered, encoding="utf-8")
        print(f"report\t{args.out}")
    else:
        sys.stdout.write(rendered)
    return EXIT_OK


def cmd_serve(args) -> int:
    from .service import ServiceConfig, serve

    config = ServiceConfig(
        network_path=_network_path(args),
        host=args.host,
        port=args.port,
        max_k=args.max_k,
        suggestion_limit=args.limit,
        cors_allowed=args.cors,
        static_dir=args.static,
    )
    serve(config)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="termgraph",
        description="Build and query a terminological variation network.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_extract = sub.add_parser("extract", help="extract noun phrases into a term inventory")
    p_extract.add_argument("--corpus", required=True)
    p_extract.add_argument("--tag-map", default=None,
                           help="tag map TSV path, or 'penn' for the builtin Penn mapping")
    p_extract.add_argument("--out", required=True, help="inventory TSV output path")
    p_extract.add_argument("--max-merge", type=int, default=2)
    p_extract.add_argument("--max-docs", type=int, default=None)
    p_extract.set_defaults(func=cmd_extract)

    p_build = sub.add_parser("build", help="build a network file from a corpus")
    p_build.add_argument("--corpus", required=True)
    p_build.add_argument("--lexicon", default=None, help="synonym lexicon TSV")
    p_build.add_argument("--config", default=None, help="build config JSON")
    p_build.add_argument("--tag-map", default=None)
    p_build.add_argument("--max-docs", type=int, default=None)
    p_build.add_argument("--out", required=True, help="network JSON output path")
    p_build.set_defaults(func=cmd_build)

    p_refine = sub.add_parser("refine", help="suggest refined queries for a term")
    p_refine.add_argument("--network", default=None)
    p_refine.add_argument("--query", required=True)
    p_refine.add_argument("--mode", default="auto",
                          choices=[m.value for m in QueryMode])
    p_refine.add_argument("--k", type=int, default=2)
    p_refine.add_argument("--limit", type=int, default=None)
    p_refine.set_defaults(func=cmd_refine)

    p_stats = sub.add_parser("stats", help="compare an external resource to the network")
    p_stats.add_argument("--network", default=None)
    p_stats.add_argument("--resource", required=True, help="one term per line")
    p_stats.add_argument("--corpus", default=None,
                         help="evaluation corpus for the occurrence block")
    p_stats.add_argument("--tag-map", default=None)
    p_stats.add_argument("--out", default="-", help="output path, - for stdout")
    p_stats.add_argument("--format", default="tsv", choices=["tsv", "markdown"])
    p_stats.add_argument("--k-max", type=int, default=3)
    p_stats.add_argument("--all-terms", action="store_true",
                         help="compare against the full inventory, not only MWT candidates")
    p_stats.set_defaults(func=cmd_stats)

    p_serve = sub.add_parser("serve", help="serve the refinement API and UI")
    p_serve.add_argument("--network", default=None)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8787)
    p_serve.add_argument("--max-k", type=int, default=3)
    p_serve.add_argument("--limit", type=int, default=50)
    p_serve.add_argument("--cors", action="store_true")
    p_serve.add_argument("--static", default=None, help="directory of built UI assets")
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TermgraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename}", file=sys.stderr)
        return EXIT_ERROR
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
