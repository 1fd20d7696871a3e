"""HTTP service exposing the index over a small JSON API.

Endpoints:
  GET  /api/terms   -> {"domain", "terms": [name, ...]}
  GET  /api/bounds  -> {"min", "max"} relevance bounds across the index
  POST /api/search  -> {"results": [...], "requested", "fulfilled"}
  GET  /api/stats   -> corpus and build figures

Error contract: 400 for an invalid request body, 404 for a term the index
does not know (and for bounds of an empty index), 503 while no index is
loaded. Request parsing is done by hand so the 400 messages stay specific.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from fastapi import FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles

from .corpus import load_documents, score_corpus
from .indexer import AttachmentIndex, build_index
from .ontology import Ontology, TermNotFoundError, load_ontology
from .retrieval import (
    EmptyIndexError,
    Query,
    QueryError,
    ResultList,
    relevance_bounds,
    search,
)


@dataclass
class ServiceState:
    """Everything the endpoints read. `index` is None until a corpus is built
    or loaded; endpoints answer 503 in that window."""

    ontology: Ontology | None = None
    index: AttachmentIndex | None = None
    urls: dict[str, str] = field(default_factory=dict)
    corpus_size: int = 0
    pages_skipped: int = 0
    build_seconds: float = 0.0
    relevance_limit: float = 0.0

    @property
    def ready(self) -> bool:
        return self.index is not None


def build_state(
    ontology_path: str | Path,
    corpus_path: str | Path,
    relevance_limit: float = 0.0,
    *,
    strip_html: bool = False,
) -> ServiceState:
    """Ingest a corpus and build the index, timing the build."""
    ontology = load_ontology(ontology_path)
    documents = load_documents(corpus_path)
    started = time.perf_counter()
    profiles, rejected = score_corpus(
        documents, ontology, relevance_limit, strip_html=strip_html
    )
    built = build_index(profiles, ontology)
    elapsed = time.perf_counter() - started
    return ServiceState(
        ontology=ontology,
        index=built.index,
        urls={doc.page_id: doc.url for doc in documents},
        corpus_size=len(built.extractions),
        pages_skipped=len(rejected) + len(built.skipped),
        build_seconds=elapsed,
        relevance_limit=relevance_limit,
    )


def parse_search_body(payload: Any) -> Query:
    """Turn a request body into a validated Query; QueryError on any defect."""
    if not isinstance(payload, dict):
        raise QueryError("request body must be a JSON object")

    dominating = payload.get("dominating")
    if dominating is None or (isinstance(dominating, str) and not dominating.strip()):
        raise QueryError("dominating term is mandatory")
    if not isinstance(dominating, str):
        raise QueryError("dominating term must be a string")

    subs = payload.get("sub_dominating", [])
    if subs is None:
        subs = []
    if not isinstance(subs, list) or not all(isinstance(s, str) for s in subs):
        raise QueryError("sub_dominating must be a list of term names")

    window = payload.get("range")
    relevance_range = None
    if window is not None:
        if (
            not isinstance(window, dict)
            or not _is_number(window.get("from"))
            or not _is_number(window.get("to"))
        ):
            raise QueryError("range must provide numeric 'from' and 'to'")
        relevance_range = (float(window["from"]), float(window["to"]))

    count = payload.get("count", 10)
    if isinstance(count, bool) or not isinstance(count, int):
        raise QueryError("count must be a positive integer")

    return Query(
        dominating=dominating,
        sub_dominating=tuple(subs),
        relevance_range=relevance_range,
        count=count,
    )


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def result_payload(result: ResultList, urls: dict[str, str]) -> dict[str, Any]:
    return {
        "results": [
            {
                "page_id": entry.page_id,
                "url": urls.get(entry.page_id, entry.page_id),
                "relevance": entry.relevance,
                "source": entry.source,
            }
            for entry in result.entries
        ],
        "requested": result.requested,
        "fulfilled": result.fulfilled,
    }


def create_app(state: ServiceState, *, frontend_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="ontoindex", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def require_ready() -> AttachmentIndex:
        if state.index is None:
            raise HTTPException(status_code=503, detail="index not loaded yet")
        return state.index

    @app.get("/api/terms")
    def terms() -> dict[str, Any]:
        index = require_ready()
        return {"domain": index.domain_name, "terms": list(index.term_names)}

    @app.get("/api/bounds")
    def bounds() -> dict[str, float]:
        index = require_ready()
        try:
            low, high = relevance_bounds(index)
        except EmptyIndexError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
        return {"min": low, "max": high}

    @app.post("/api/search")
    async def run_search(request: Request) -> dict[str, Any]:
        index = require_ready()
        try:
            payload = await request.json()
        except Exception as exc:
            raise HTTPException(
                status_code=400, detail="request body must be valid JSON"
            ) from exc
        try:
            query = parse_search_body(payload)
            result = search(index, query)
        except QueryError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        except TermNotFoundError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
        return result_payload(result, state.urls)

    @app.get("/api/stats")
    def stats() -> dict[str, Any]:
        index = require_ready()
        return {
            "domain": index.domain_name,
            "term_count": len(index.term_names),
            "corpus_size": state.corpus_size,
            "pages_skipped": state.pages_skipped,
            "relevance_limit": state.relevance_limit,
            "build_seconds": state.build_seconds,
            "min_relevance": index.min_relevance,
            "max_relevance": index.max_relevance,
        }

    if frontend_dir is not None:
        mount_frontend(app, frontend_dir)
    return app


def mount_frontend(app: FastAPI, dist_dir: str | Path) -> bool:
    """Serve a built frontend from / when its index.html exists."""
    dist = Path(dist_dir)
    if not (dist / "index.html").is_file():
        return False
    app.mount("/", StaticFiles(directory=dist, html=True), name="frontend")
    return True
