"""Command-line front end.

Subcommands: ingest, build-index, search, serve, bench, accuracy, gen-corpus.
All failures exit nonzero with a message on stderr. `serve` reads defaults
from a JSON config file named by --config or the ONTOINDEX_CONFIG variable;
explicit flags win over the config file.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path
from typing import Any, Sequence

from .corpus import (
    CorpusError,
    load_documents,
    load_profiles,
    save_profiles,
    score_corpus,
)
from .harness import AccuracyReport, BenchReport, run_accuracy, run_bench
from .indexer import (
    DuplicatePageError,
    IndexLoadError,
    build_index,
    load_index,
    save_index,
)
from .ontology import OntologyError, TermNotFoundError, load_ontology
from .retrieval import BUCKET_LABELS, Query, QueryError, quotas, search
from .synthetic import (
    GenerationError,
    default_ontology,
    generate_corpus,
    load_manifest,
    write_corpus,
)

CONFIG_ENV_VAR = "ONTOINDEX_CONFIG"
_DEFAULT_LISTEN = "127.0.0.1:8080"

_USER_ERRORS = (
    OntologyError,
    CorpusError,
    IndexLoadError,
    QueryError,
    TermNotFoundError,
    DuplicatePageError,
    GenerationError,
    OSError,
    ValueError,
)


def _parse_terms_list(text: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in text.split(",") if part.strip())


def _parse_range(text: str) -> tuple[float, float]:
    low, sep, high = text.partition(":")
    if not sep:
        raise ValueError(f"range must look like 'lo:hi', got '{text}'")
    try:
        return float(low), float(high)
    except ValueError as exc:
        raise ValueError(f"range bounds must be numbers, got '{text}'") from exc


def _parse_counts(text: str) -> list[int]:
    try:
        counts = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise ValueError(f"counts must be comma-separated integers, got '{text}'") from exc
    if not counts:
        raise ValueError("counts list is empty")
    return counts


def _parse_listen(text: str) -> tuple[str, int]:
    host, sep, port = text.rpartition(":")
    if not sep or not host:
        raise ValueError(f"listen address must look like 'host:port', got '{text}'")
    try:
        return host, int(port)
    except ValueError as exc:
        raise ValueError(f"listen port must be an integer, got '{port}'") from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ontoindex",
        description="Ontology-term web-page indexing and quota-mixed retrieval.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="score a corpus into page profiles")
    p.add_argument("--ontology", required=True, help="ontology JSON file")
    p.add_argument("--corpus", required=True, help="directory of text files or a JSONL file")
    p.add_argument("--out", required=True, help="profiles JSONL output path")
    p.add_argument("--relevance-limit", type=float, default=0.0,
                   help="drop pages whose relevance is below this value")
    p.add_argument("--strip-html", action="store_true",
                   help="remove <...> tags before tokenizing")

    p = sub.add_parser("build-index", help="build and save the attachment index")
    p.add_argument("--ontology", required=True)
    p.add_argument("--corpus", help="corpus to score (directory or JSONL)")
    p.add_argument("--profiles", help="previously ingested profiles JSONL")
    p.add_argument("--out", required=True, help="index JSON output path")
    p.add_argument("--relevance-limit", type=float, default=0.0)
    p.add_argument("--strip-html", action="store_true")

    p = sub.add_parser("search", help="query a saved index")
    p.add_argument("--index", required=True, help="index JSON file")
    p.add_argument("--dominating", required=True, help="dominating term name")
    p.add_argument("--sub", default="", metavar="T1,T2,...",
                   help="up to four sub-dominating terms, comma separated")
    p.add_argument("--range", dest="range_", metavar="LO:HI",
                   help="closed relevance interval filter")
    p.add_argument("--count", type=int, default=10, help="requested result count")
    p.add_argument("--json", action="store_true", help="print the result list as JSON")

    p = sub.add_parser("serve", help="build an index and serve the HTTP API")
    p.add_argument("--config", help=f"JSON config file (default: ${CONFIG_ENV_VAR})")
    p.add_argument("--ontology")
    p.add_argument("--corpus")
    p.add_argument("--relevance-limit", type=float, default=None)
    p.add_argument("--listen", metavar="HOST:PORT")
    p.add_argument("--strip-html", action="store_true")
    p.add_argument("--frontend", help="directory with a built web UI to serve at /")

    p = sub.add_parser("bench", help="time indexed search against the linear scan")
    p.add_argument("--corpus-size", type=int, default=5000)
    p.add_argument("--counts", default="10,20,30,40,50", metavar="N1,N2,...")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--repetitions", type=int, default=7)
    p.add_argument("--corpus-dir", help="use a gen-corpus output directory instead of generating")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("accuracy", help="measure retrieval relevance on a planted corpus")
    p.add_argument("--corpus-size", type=int, default=1000)
    p.add_argument("--counts", default="10,20,30,40,50", metavar="N1,N2,...")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--noise", type=float, default=0.0,
                   help="fraction of pages polluted with out-of-group terms")
    p.add_argument("--corpus-dir", help="use a gen-corpus output directory instead of generating")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("gen-corpus", help="write a synthetic corpus with ground truth")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--pages", type=int, required=True)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--ontology", help="ontology JSON file (default: built-in mobile domain)")
    p.add_argument("--sub-terms", type=int, default=None,
                   help="sub-dominating terms per page (default: as many as possible, max 4)")
    p.add_argument("--noise", type=float, default=0.0)

    return parser


def _cmd_ingest(args: argparse.Namespace) -> int:
    ontology = load_ontology(args.ontology)
    documents = load_documents(args.corpus)
    profiles, rejected = score_corpus(
        documents, ontology, args.relevance_limit, strip_html=args.strip_html
    )
    save_profiles(profiles, args.out)
    print(f"scored {len(documents)} pages: kept {len(profiles)}, "
          f"rejected {len(rejected)} below limit {args.relevance_limit}")
    print(f"profiles written to {args.out}")
    return 0


def _cmd_build_index(args: argparse.Namespace) -> int:
    if bool(args.corpus) == bool(args.profiles):
        print("error: provide exactly one of --corpus or --profiles", file=sys.stderr)
        return 2
    ontology = load_ontology(args.ontology)
    if args.corpus:
        documents = load_documents(args.corpus)
        profiles, rejected = score_corpus(
            documents, ontology, args.relevance_limit, strip_html=args.strip_html
        )
    else:
        profiles = load_profiles(args.profiles)
        rejected = []

    started = time.perf_counter()
    built = build_index(profiles, ontology)
    elapsed = time.perf_counter() - started
    save_index(built.index, args.out)

    print(f"indexed {len(built.extractions)} pages in {elapsed:.3f}s "
          f"({built.pages_visited} visited, {len(built.skipped)} without any term, "
          f"{len(rejected)} rejected below limit)")
    if built.index.min_relevance is not None:
        print(f"relevance bounds: {built.index.min_relevance} .. {built.index.max_relevance}")
    print(f"index written to {args.out}")
    return 0


def _cmd_search(args: argparse.Namespace) -> int:
    index = load_index(args.index)
    query = Query(
        dominating=args.dominating,
        sub_dominating=_parse_terms_list(args.sub),
        relevance_range=_parse_range(args.range_) if args.range_ else None,
        count=args.count,
    )
    result = search(index, query)

    if args.json:
        print(json.dumps({
            "results": [
                {"page_id": e.page_id, "relevance": e.relevance, "source": e.source}
                for e in result.entries
            ],
            "requested": result.requested,
            "fulfilled": result.fulfilled,
        }, indent=1))
        return 0

    plan = quotas(query.count, len(query.sub_dominating))
    plan_text = " ".join(
        f"{label}={share}"
        for label, share in zip(BUCKET_LABELS, plan)
        if share or label == "primary"
    )
    print(f"quota plan: {plan_text}")
    if result.entries:
        width = max(len(e.page_id) for e in result.entries)
        for rank, entry in enumerate(result.entries, start=1):
            print(f"{rank:>4}  {entry.page_id:<{width}}  {entry.relevance:>12.4f}  {entry.source}")
    print(f"fulfilled {result.fulfilled} of {result.requested}")
    return 0


def _load_config(path: str | None) -> dict[str, Any]:
    config_path = path or os.environ.get(CONFIG_ENV_VAR)
    if not config_path:
        return {}
    doc = json.loads(Path(config_path).read_text(encoding="utf-8"))
    if not isinstance(doc, dict):
        raise ValueError(f"config file {config_path} must hold a JSON object")
    return doc


def _cmd_serve(args: argparse.Namespace) -> int:
    from .service import build_state, create_app

    config = _load_config(args.config)
    ontology_path = args.ontology or config.get("ontology")
    corpus_path = args.corpus or config.get("corpus")
    if not ontology_path or not corpus_path:
        print("error: serve needs an ontology and a corpus "
              "(--ontology/--corpus flags or a config file)", file=sys.stderr)
        return 2
    relevance_limit = (
        args.relevance_limit
        if args.relevance_limit is not None
        else float(config.get("relevance_limit", 0.0))
    )
    listen = args.listen or config.get("listen") or _DEFAULT_LISTEN
    host, port = _parse_listen(listen)

    state = build_state(
        ontology_path, corpus_path, relevance_limit, strip_html=args.strip_html
    )
    print(f"indexed {state.corpus_size} pages ({state.pages_skipped} skipped) "
          f"in {state.build_seconds:.3f}s; serving on http://{host}:{port}")
    app = create_app(state, frontend_dir=args.frontend)

    import uvicorn

    uvicorn.run(app, host=host, port=port, log_level="warning")
    return 0


def _planted_corpus(args: argparse.Namespace, noise: float):
    """Shared fixture loading for bench and accuracy runs."""
    if args.corpus_dir:
        corpus_dir = Path(args.corpus_dir)
        ontology = load_ontology(corpus_dir / "ontology.json")
        documents = load_documents(corpus_dir / "corpus.jsonl")
        planted = load_manifest(corpus_dir / "manifest.json")
    else:
        ontology = default_ontology()
        documents, planted = generate_corpus(
            ontology, args.corpus_size, args.seed, noise=noise
        )
    profiles, _ = score_corpus(documents, ontology)
    built = build_index(profiles, ontology)
    return ontology, built, planted


def _print_bench(report: BenchReport, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report.as_dict(), indent=1))
        return
    row = report.rows[0]
    print(f"corpus_size={row.corpus_size} queries={report.query_count} "
          f"repetitions={row.repetitions}")
    print(f"{'count':>5}  {'scan_ms':>10}  {'indexed_ms':>10}  {'speedup':>8}")
    for row in report.rows:
        print(f"{row.count:>5}  {row.scan_seconds * 1e3:>10.3f}  "
              f"{row.indexed_seconds * 1e3:>10.3f}  {row.speedup:>7.2f}x")


def _cmd_bench(args: argparse.Namespace) -> int:
    counts = _parse_counts(args.counts)
    ontology, built, _ = _planted_corpus(args, noise=0.0)
    report = run_bench(
        built.index, built.extractions, ontology, counts, repetitions=args.repetitions
    )
    _print_bench(report, args.json)
    return 0


def _print_accuracy(report: AccuracyReport, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report.as_dict(), indent=1))
        return
    print(f"corpus_size={report.corpus_size} queries={report.query_count}")
    print(f"{'count':>5}  {'avg_relevant':>13}  {'avg_non_relevant':>17}")
    for row in report.rows:
        print(f"{row.count:>5}  {row.avg_relevant:>13.2f}  {row.avg_non_relevant:>17.2f}")


def _cmd_accuracy(args: argparse.Namespace) -> int:
    counts = _parse_counts(args.counts)
    noise = args.noise if not args.corpus_dir else 0.0
    _, built, planted = _planted_corpus(args, noise=noise)
    if not planted:
        print("error: no ground-truth manifest available", file=sys.stderr)
        return 2
    report = run_accuracy(built.index, planted, counts)
    _print_accuracy(report, args.json)
    return 0


def _cmd_gen_corpus(args: argparse.Namespace) -> int:
    ontology = load_ontology(args.ontology) if args.ontology else default_ontology()
    documents, planted = generate_corpus(
        ontology, args.pages, args.seed, sub_terms=args.sub_terms, noise=args.noise
    )
    write_corpus(args.out, documents, planted, ontology, args.seed)
    print(f"wrote {len(documents)} pages to {args.out} "
          "(corpus.jsonl, manifest.json, ontology.json)")
    return 0


_COMMANDS = {
    "ingest": _cmd_ingest,
    "build-index": _cmd_build_index,
    "search": _cmd_search,
    "serve": _cmd_serve,
    "bench": _cmd_bench,
    "accuracy": _cmd_accuracy,
    "gen-corpus": _cmd_gen_corpus,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except _USER_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
