"""Read-only HTTP API over a network snapshot, plus static UI assets.

All responses use the envelope ``{"version": "1", "data": ..., "error":
null}``; errors carry ``{"code", "message"}`` instead of data.  Requests
never mutate the network: the only state change is the reload endpoint,
which loads a fresh snapshot from disk and swaps it in atomically.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .errors import EmptyAfterNormalization, TermgraphError, UnknownTerm
from .network import TermNetwork, load_network, select_mwt_candidates
from .refine import (
    MAX_CHAIN_DEPTH,
    Query,
    QueryMode,
    RefinementSuggestion,
    fetch_documents,
    refine,
)

API_VERSION = "1"


@dataclass
class ServiceConfig:
    network_path: str
    host: str = "127.0.0.1"
    port: int = 8787
    max_k: int = 3
    suggestion_limit: int = 50
    cors_allowed: bool = False
    static_dir: str | None = None

    def __post_init__(self):
        if not 0 <= self.max_k <= MAX_CHAIN_DEPTH:
            raise ValueError(f"max_k must be in 0..{MAX_CHAIN_DEPTH}")
        if self.suggestion_limit < 1:
            raise ValueError("suggestion_limit must be >= 1")


class NetworkHolder:
    """Holds the current network snapshot; reload swaps it atomically."""

    def __init__(self, path: str):
        self.path = path
        self.network: TermNetwork = load_network(path)

    def reload(self) -> TermNetwork:
        fresh = load_network(self.path)
        self.network = fresh  # attribute assignment is atomic
        return fresh


def _ok(data, status: int = 200) -> JSONResponse:
    return JSONResponse({"version": API_VERSION, "data": data, "error": None},
                        status_code=status)


def _err(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(
        {"version": API_VERSION, "data": None,
         "error": {"code": code, "message": message}},
        status_code=status)


def _suggestion_json(s: RefinementSuggestion) -> dict:
    return {
        "term_id": s.term_id,
        "words": " ".join(s.words),
        "relation_path": list(s.path_tags),
        "score": s.score,
        "doc_count": s.doc_count,
        "component_id": s.component_id,
        "added_words": s.added_words,
        "uniterm_hits": s.uniterm_hits,
    }


def _term_json(net: TermNetwork, term_id: int) -> dict:
    term = net.inventory.terms[term_id]
    return {
        "term_id": term.term_id,
        "words": " ".join(term.words),
        "surfaces": sorted(term.surfaces),
        "freq_occurrences": term.freq_occurrences,
        "freq_docs": term.freq_docs,
        "component_id": net.component_of(term_id),
    }


def _parse_int(value: str | None, default: int, minimum: int):
    if value is None:
        return default
    try:
        parsed = int(value)
    except ValueError:
        return None
    return parsed if parsed >= minimum else None


def create_app(holder: NetworkHolder, config: ServiceConfig) -> FastAPI:
    app = FastAPI(title="termgraph", docs_url=None, redoc_url=None)

    if config.cors_allowed:
        from fastapi.middleware.cors import CORSMiddleware
        app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["GET", "POST"])

    @app.exception_handler(Exception)
    async def on_internal_error(request: Request, exc: Exception):
        return _err(500, "internal", str(exc))

    # keep the envelope contract when path/query parsing fails (e.g. a
    # non-integer term id), instead of the framework's default 422 body
    from fastapi.exceptions import RequestValidationError

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError):
        return _err(400, "bad_request", "invalid request parameters")

    @app.get("/api/health")
    def health():
        net = holder.network
        return _ok({"status": "ok", "terms": len(net.inventory),
                    "components": len(net.components)})

    @app.get("/api/refine")
    def api_refine(q: str = "", mode: str = "auto", k: str | None = None,
                   offset: str | None = None, limit: str | None = None):
        net = holder.network
        if not q.strip():
            return _err(400, "bad_request", "query parameter q must be non-empty")
        try:
            query_mode = QueryMode(mode.lower())
        except ValueError:
            return _err(400, "bad_request", f"unknown mode {mode!r}")
        depth = _parse_int(k, default=min(2, config.max_k), minimum=0)
        if depth is None or depth > config.max_k:
            return _err(400, "bad_request", f"k must be an integer in 0..{config.max_k}")
        off = _parse_int(offset, default=0, minimum=0)
        lim = _parse_int(limit, default=config.suggestion_limit, minimum=1)
        if off is None or lim is None:
            return _err(400, "bad_request", "offset must be >= 0 and limit >= 1")
        try:
            query = Query.parse(q, mode=query_mode, k=depth)
        except EmptyAfterNormalization:
            return _err(400, "bad_request", f"query {q!r} is empty after normalization")
        suggestions = refine(query, net)
        page = suggestions[off:off + lim]
        return _ok({
            "query": q,
            "normalized": " ".join(query.words),
            "mode": query_mode.value,
            "k": depth,
            "total": len(suggestions),
            "offset": off,
            "limit": lim,
            "suggestions": [_suggestion_json(s) for s in page],
        })

    @app.get("/api/terms/{term_id}")
    def api_term(term_id: int):
        net = holder.network
        if net.inventory.get(term_id) is None:
            return _err(404, "not_found", f"no term with id {term_id}")
        return _ok(_term_json(net, term_id))

    @app.get("/api/terms")
    def api_terms(prefix: str = "", limit: str | None = None):
        net = holder.network
        if not prefix.strip():
            return _err(400, "bad_request", "prefix parameter must be non-empty")
        lim = _parse_int(limit, default=config.suggestion_limit, minimum=1)
        if lim is None:
            return _err(400, "bad_request", "limit must be >= 1")
        try:
            wanted = " ".join(Query.parse(prefix).words)
        except EmptyAfterNormalization:
            return _err(400, "bad_request", "prefix is empty after normalization")
        rows = [
            _term_json(net, t.term_id) for t in net.inventory
            if " ".join(t.words).startswith(wanted)
        ]
        return _ok({"prefix": wanted, "total": len(rows), "terms": rows[:lim]})

    @app.get("/api/components/{comp_id}")
    def api_component(comp_id: int):
        net = holder.network
        comp = net.component(comp_id)
        if comp is None:
            return _err(404, "not_found", f"no component with id {comp_id}")
        members = sorted(comp.member_ids)
        member_set = comp.member_ids
        edges = [
            {"kind": e.kind.tag, "a": e.a, "b": e.b}
            for e in net.edges if e.a in member_set and e.b in member_set
        ]
        degree = {m: 0 for m in members}
        for e in edges:
            if e["kind"] in ("orth", "sub_syn", "ins", "exp_l"):
                degree[e["a"]] += 1
                degree[e["b"]] += 1
        return _ok({
            "component_id": comp.comp_id,
            "label_id": comp.label_id,
            "members": [
                dict(_term_json(net, m), degree=degree[m]) for m in members
            ],
            "edges": edges,
        })

    @app.get("/api/docs/{doc_id}")
    def api_doc(doc_id: str):
        net = holder.network
        info = net.docs.get(doc_id)
        if info is None:
            return _err(404, "not_found", f"no document {doc_id!r}")
        return _ok({"doc_id": info.doc_id, "metadata": info.metadata,
                    "n_tokens": info.n_tokens, "text": info.text})

    @app.get("/api/term/{term_id}/docs")
    def api_term_docs(term_id: int, limit: str | None = None):
        net = holder.network
        lim = _parse_int(limit, default=config.suggestion_limit, minimum=1)
        if lim is None:
            return _err(400, "bad_request", "limit must be >= 1")
        try:
            rows = fetch_documents(term_id, net, limit=lim)
        except UnknownTerm:
            return _err(404, "not_found", f"no term with id {term_id}")
        return _ok({
            "term_id": term_id,
            "documents": [
                {"doc_id": doc_id, "occurrences": count, "metadata": meta}
                for doc_id, count, meta in rows
            ],
        })

    @app.get("/api/stats")
    def api_stats():
        net = holder.network
        candidates = select_mwt_candidates(net)
        return _ok({
            "meta": net.build_meta,
            "terms": len(net.inventory),
            "edges": net.edge_counts(),
            "components": len(net.components),
            "component_size_histogram":
                {str(k): v for k, v in net.component_size_histogram().items()},
            "mwt_candidates": len(candidates),
            "docs": len(net.docs),
        })

    @app.post("/api/reload")
    def api_reload():
        try:
            fresh = holder.reload()
        except (OSError, TermgraphError) as exc:
            return _err(500, "reload_failed", str(exc))
        return _ok({"status": "reloaded", "terms": len(fresh.inventory)})

    if config.static_dir and Path(config.static_dir).is_dir():
        app.mount("/", StaticFiles(directory=config.static_dir, html=True), name="ui")

    return app


def serve(config: ServiceConfig) -> None:
    """Run the service until interrupted (startup fails fast on a bad
    network file or an occupied port)."""
    import uvicorn

    holder = NetworkHolder(config.network_path)
    app = create_app(holder, config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
