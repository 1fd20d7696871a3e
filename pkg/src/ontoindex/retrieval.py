"""Quota-mixed retrieval.

A query names one dominating term, up to four sub-dominating terms, an
optional closed relevance range, and a result count. The count is split
across the term buckets as 50/20/15/10/5 percent; shares of unused sub
slots fold into the dominating bucket. Shortfall in any bucket is made up
from the others in priority order.

Two implementations answer the same query: `search` walks the attachment
index, `linear_scan_search` scans raw page extractions. They must return
identical results; the scan exists as the correctness baseline and as the
comparison subject for benchmarks.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from math import inf
from typing import Sequence

from .indexer import MAX_SUB_DOMINATING, AttachmentIndex, Extraction, Posting
from .ontology import Ontology, TermNotFoundError, binary_search
from .tokens import canonical_name

# Percent of the requested count assigned to each bucket, priority order:
# dominating primary first, then the sub-dominating secondaries.
BUCKET_SHARES = (50, 20, 15, 10, 5)
BUCKET_LABELS = ("primary", "sub1", "sub2", "sub3", "sub4")


class QueryError(ValueError):
    """The query itself is invalid, independent of any index content."""


class EmptyIndexError(ValueError):
    """The index holds no pages, so relevance bounds are undefined."""


@dataclass(frozen=True)
class Query:
    """Validated, canonicalized retrieval request.

    Term names are case-folded on construction. `relevance_range` is a closed
    [low, high] interval; None means no relevance filtering.
    """

    dominating: str
    sub_dominating: tuple[str, ...] = ()
    relevance_range: tuple[float, float] | None = None
    count: int = 10

    def __post_init__(self) -> None:
        dom = canonical_name(self.dominating or "")
        if not dom:
            raise QueryError("dominating term is mandatory")
        object.__setattr__(self, "dominating", dom)

        subs = tuple(canonical_name(s) for s in self.sub_dominating)
        if any(not s for s in subs):
            raise QueryError("sub-dominating term names must be non-empty")
        if len(subs) > MAX_SUB_DOMINATING:
            raise QueryError(
                f"at most {MAX_SUB_DOMINATING} sub-dominating terms are allowed"
            )
        if len(set(subs)) != len(subs) or dom in subs:
            raise QueryError(
                "sub-dominating terms must be distinct from each other and the dominating term"
            )
        object.__setattr__(self, "sub_dominating", subs)

        if isinstance(self.count, bool) or not isinstance(self.count, int) or self.count < 1:
            raise QueryError("count must be a positive integer")

        if self.relevance_range is not None:
            try:
                low, high = self.relevance_range
                low, high = float(low), float(high)
            except (TypeError, ValueError) as exc:
                raise QueryError("relevance range must be a [low, high] number pair") from exc
            if low > high:
                raise QueryError(f"relevance range is inverted: {low} > {high}")
            object.__setattr__(self, "relevance_range", (low, high))


@dataclass(frozen=True)
class ResultEntry:
    page_id: str
    relevance: float
    source: str  # which bucket supplied the page, see BUCKET_LABELS


@dataclass(frozen=True)
class ResultList:
    entries: tuple[ResultEntry, ...]
    requested: int

    @property
    def fulfilled(self) -> int:
        return len(self.entries)


def quotas(count: int, num_sub: int) -> tuple[int, int, int, int, int]:
    """Split `count` across the five buckets, exactly.

    Shares of sub buckets beyond `num_sub` fold into the dominating bucket.
    Apportionment is largest remainder over exact integer hundredths: bucket i
    gets floor(count * share_i / 100), and the leftover units go to the largest
    fractional remainders, lower bucket index winning ties. The returned
    quotas always sum to `count`.
    """
    if isinstance(count, bool) or not isinstance(count, int) or count < 0:
        raise ValueError("count must be a non-negative integer")
    if not 0 <= num_sub <= MAX_SUB_DOMINATING:
        raise ValueError(f"num_sub must be between 0 and {MAX_SUB_DOMINATING}")

    shares = list(BUCKET_SHARES)
    for i in range(num_sub + 1, len(shares)):
        shares[0] += shares[i]
        shares[i] = 0

    hundredths = [count * share for share in shares]
    floors = [n // 100 for n in hundredths]
    leftover = count - sum(floors)
    # Sort on (-remainder, bucket index): biggest remainder first, priority
    # order breaking exact ties.
    order = sorted(range(len(shares)), key=lambda i: (-(hundredths[i] % 100), i))
    for i in order[:leftover]:
        floors[i] += 1
    return tuple(floors)  # type: ignore[return-value]


def _range_bounds(query: Query) -> tuple[float, float]:
    if query.relevance_range is None:
        return (-inf, inf)
    return query.relevance_range


def search(index: AttachmentIndex, query: Query) -> ResultList:
    """Answer a query from the attachment index.

    Buckets are located by binary search on the sorted term array; the
    relevance window inside each posting list is located by bisection, so a
    query touches only the postings it can return plus duplicates it skips.
    Raises TermNotFoundError for a term absent from the index.
    """
    buckets: list[Sequence[Posting]] = []
    position, _ = binary_search(index.term_names, query.dominating)
    if position is None:
        raise TermNotFoundError(query.dominating)
    buckets.append(index.postings[index.term_names[position]].primary)
    for name in query.sub_dominating:
        position, _ = binary_search(index.term_names, name)
        if position is None:
            raise TermNotFoundError(name)
        buckets.append(index.postings[index.term_names[position]].secondary)

    low, high = _range_bounds(query)
    # Lists are sorted by relevance descending; the [low, high] window is the
    # contiguous run where -relevance lies in [-high, -low].
    positions = [bisect_left(b, -high, key=_negated_relevance) for b in buckets]
    ends = [bisect_right(b, -low, key=_negated_relevance) for b in buckets]

    plan = quotas(query.count, len(query.sub_dominating))
    picked: list[list[Posting]] = [[] for _ in buckets]
    seen: set[str] = set()
    total = 0

    def drain(bucket_idx: int, want: int) -> None:
        nonlocal total
        bucket = buckets[bucket_idx]
        end = ends[bucket_idx]
        while want > 0 and positions[bucket_idx] < end:
            posting = bucket[positions[bucket_idx]]
            positions[bucket_idx] += 1
            if posting.page_id in seen:
                # A duplicate does not consume quota; keep scanning.
                continue
            seen.add(posting.page_id)
            picked[bucket_idx].append(posting)
            want -= 1
            total += 1

    for bucket_idx in range(len(buckets)):
        drain(bucket_idx, plan[bucket_idx])
    if total < query.count:
        for bucket_idx in range(len(buckets)):
            drain(bucket_idx, query.count - total)
            if total >= query.count:
                break

    entries = tuple(
        ResultEntry(p.page_id, p.relevance, BUCKET_LABELS[bucket_idx])
        for bucket_idx, picks in enumerate(picked)
        for p in picks
    )
    return ResultList(entries=entries, requested=query.count)


def _negated_relevance(posting: Posting) -> float:
    return -posting.relevance


def linear_scan_search(
    extractions: Sequence[Extraction], query: Query, ontology: Ontology
) -> ResultList:
    """Answer a query by scanning every page extraction.

    Deliberately kept independent of the index structures: it rebuilds each
    bucket by a full pass over the extractions and applies the same quota
    mixing. Output must be identical to `search` over an index built from
    the same extractions.
    """
    if query.dominating not in ontology.names:
        raise TermNotFoundError(query.dominating)
    for name in query.sub_dominating:
        if name not in ontology.names:
            raise TermNotFoundError(name)

    low, high = _range_bounds(query)
    bucket_count = 1 + len(query.sub_dominating)
    buckets: list[list[Extraction]] = []
    for bucket_idx in range(bucket_count):
        if bucket_idx == 0:
            members = [e for e in extractions if e.dominating == query.dominating]
        else:
            wanted = query.sub_dominating[bucket_idx - 1]
            members = [e for e in extractions if wanted in e.sub_dominating]
        members = [e for e in members if low <= e.relevance <= high]
        members.sort(key=lambda e: (-e.relevance, e.page_id))
        buckets.append(members)

    plan = quotas(query.count, len(query.sub_dominating))
    picked: list[list[Extraction]] = [[] for _ in range(bucket_count)]
    seen: set[str] = set()
    total = 0

    # Phase 1: each bucket fills its own quota, skipping pages some earlier
    # bucket already delivered.
    for bucket_idx in range(bucket_count):
        for extraction in buckets[bucket_idx]:
            if len(picked[bucket_idx]) == plan[bucket_idx]:
                break
            if extraction.page_id in seen:
                continue
            seen.add(extraction.page_id)
            picked[bucket_idx].append(extraction)
            total += 1

    # Phase 2: make up any shortfall in priority order. Rescanning a bucket
    # from the front is safe: everything passed over in phase 1 is in `seen`.
    for bucket_idx in range(bucket_count):
        if total == query.count:
            break
        for extraction in buckets[bucket_idx]:
            if total == query.count:
                break
            if extraction.page_id in seen:
                continue
            seen.add(extraction.page_id)
            picked[bucket_idx].append(extraction)
            total += 1

    entries = tuple(
        ResultEntry(e.page_id, e.relevance, BUCKET_LABELS[bucket_idx])
        for bucket_idx, picks in enumerate(picked)
        for e in picks
    )
    return ResultList(entries=entries, requested=query.count)


def relevance_bounds(index: AttachmentIndex) -> tuple[float, float]:
    """Smallest and largest page relevance in the index, for range pickers."""
    if index.min_relevance is None or index.max_relevance is None:
        raise EmptyIndexError("index holds no pages")
    return (index.min_relevance, index.max_relevance)
