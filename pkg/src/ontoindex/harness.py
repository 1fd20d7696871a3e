"""Measurement harnesses: retrieval latency and retrieval accuracy.

The latency harness times the same query batch against the attachment index
and against the linear-scan baseline, after first insisting the two agree on
every query. The accuracy harness replays queries derived from a synthetic
corpus manifest and counts how many returned pages actually belong to the
queried topic per the planted ground truth.
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass
from typing import Any, Sequence

from .indexer import MAX_SUB_DOMINATING, AttachmentIndex, Extraction
from .ontology import Ontology
from .retrieval import Query, linear_scan_search, search
from .synthetic import PlantedPage

_MIN_REPETITIONS = 5


@dataclass(frozen=True)
class BenchRow:
    """Median per-query seconds for one requested result count."""

    count: int
    scan_seconds: float
    indexed_seconds: float
    corpus_size: int
    repetitions: int

    @property
    def speedup(self) -> float:
        if self.indexed_seconds == 0:
            return float("inf")
        return self.scan_seconds / self.indexed_seconds

    def as_dict(self) -> dict[str, Any]:
        return {
            "count": self.count,
            "scan_seconds": self.scan_seconds,
            "indexed_seconds": self.indexed_seconds,
            "corpus_size": self.corpus_size,
            "repetitions": self.repetitions,
            "speedup": self.speedup,
        }


@dataclass(frozen=True)
class BenchReport:
    query_count: int
    rows: tuple[BenchRow, ...]

    def as_dict(self) -> dict[str, Any]:
        return {
            "query_count": self.query_count,
            "rows": [row.as_dict() for row in self.rows],
        }


@dataclass(frozen=True)
class AccuracyRow:
    """Relevance outcome for one requested result count.

    Totals are exact integers summed over the query set; the averages are
    derived views for display. relevant + non_relevant counts every returned
    page exactly once, so avg_relevant + avg_non_relevant equals the count
    exactly whenever every query was fully satisfied.
    """

    count: int
    relevant_total: int
    non_relevant_total: int
    query_count: int
    corpus_size: int

    @property
    def avg_relevant(self) -> float:
        return self.relevant_total / self.query_count

    @property
    def avg_non_relevant(self) -> float:
        return self.non_relevant_total / self.query_count

    def as_dict(self) -> dict[str, Any]:
        return {
            "count": self.count,
            "avg_relevant": self.avg_relevant,
            "avg_non_relevant": self.avg_non_relevant,
            "relevant_total": self.relevant_total,
            "non_relevant_total": self.non_relevant_total,
            "query_count": self.query_count,
            "corpus_size": self.corpus_size,
        }


@dataclass(frozen=True)
class AccuracyReport:
    corpus_size: int
    query_count: int
    rows: tuple[AccuracyRow, ...]

    def as_dict(self) -> dict[str, Any]:
        return {
            "corpus_size": self.corpus_size,
            "query_count": self.query_count,
            "rows": [row.as_dict() for row in self.rows],
        }


def build_query_set(ontology: Ontology, count: int, limit: int = 16) -> list[Query]:
    """A deterministic query batch cycling every term through the dominating
    slot, with the following terms (wrapping around) as sub-dominating."""
    names = ontology.names
    num_sub = min(MAX_SUB_DOMINATING, len(names) - 1)
    queries = []
    for start in range(min(len(names), limit)):
        subs = tuple(names[(start + 1 + j) % len(names)] for j in range(num_sub))
        queries.append(Query(names[start], subs, None, count))
    return queries


def run_bench(
    index: AttachmentIndex,
    extractions: Sequence[Extraction],
    ontology: Ontology,
    counts: Sequence[int],
    repetitions: int = 7,
) -> BenchReport:
    """Time indexed search against the linear-scan baseline.

    Both engines answer the identical query batch; equality of their results
    is asserted before any timing, so the benchmark can never compare two
    implementations that disagree. Each repetition times the whole batch,
    alternating engines; the row reports medians divided down to per-query
    seconds.
    """
    if repetitions < _MIN_REPETITIONS:
        raise ValueError(f"repetitions must be at least {_MIN_REPETITIONS}")
    if not counts or any(c < 1 for c in counts):
        raise ValueError("counts must be a non-empty list of positive integers")

    rows: list[BenchRow] = []
    query_count = 0
    for count in counts:
        queries = build_query_set(ontology, count)
        query_count = len(queries)
        for query in queries:
            indexed = search(index, query)
            scanned = linear_scan_search(extractions, query, ontology)
            if indexed != scanned:
                raise RuntimeError(
                    f"index and scan disagree on dominating='{query.dominating}' "
                    f"count={count}; refusing to benchmark"
                )

        scan_samples: list[float] = []
        indexed_samples: list[float] = []
        for _ in range(repetitions):
            started = time.perf_counter()
            for query in queries:
                linear_scan_search(extractions, query, ontology)
            scan_samples.append(time.perf_counter() - started)

            started = time.perf_counter()
            for query in queries:
                search(index, query)
            indexed_samples.append(time.perf_counter() - started)

        scan_seconds = statistics.median(scan_samples) / len(queries)
        indexed_seconds = statistics.median(indexed_samples) / len(queries)
        rows.append(
            BenchRow(count, scan_seconds, indexed_seconds, len(extractions), repetitions)
        )

    return BenchReport(query_count=query_count, rows=tuple(rows))


def run_accuracy(
    index: AttachmentIndex,
    planted: Sequence[PlantedPage],
    counts: Sequence[int],
    max_queries: int = 25,
) -> AccuracyReport:
    """Replay planted query patterns and judge results against ground truth.

    A returned page counts as relevant when the query's dominating term is
    among the page's planted terms (its dominating or sub-dominating set);
    everything else returned counts as non-relevant.
    """
    if not counts or any(c < 1 for c in counts):
        raise ValueError("counts must be a non-empty list of positive integers")
    if not planted:
        raise ValueError("manifest holds no pages")

    planted_terms = {
        p.page_id: {p.dominating, *p.sub_dominating} for p in planted
    }
    patterns = sorted({(p.dominating, p.sub_dominating) for p in planted})[:max_queries]

    rows: list[AccuracyRow] = []
    for count in counts:
        relevant_total = 0
        non_relevant_total = 0
        for dominating, subs in patterns:
            result = search(index, Query(dominating, subs, None, count))
            relevant = sum(
                1
                for entry in result.entries
                if dominating in planted_terms.get(entry.page_id, ())
            )
            relevant_total += relevant
            non_relevant_total += result.fulfilled - relevant
        rows.append(
            AccuracyRow(count, relevant_total, non_relevant_total, len(patterns), len(planted))
        )

    return AccuracyReport(
        corpus_size=len(planted), query_count=len(patterns), rows=tuple(rows)
    )
