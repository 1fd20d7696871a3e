"""Attachment index construction and persistence.

Every indexed page is attached to exactly one dominating term (its primary
posting) and to at most four sub-dominating terms (secondary postings).
Posting lists are kept sorted by relevance descending, page id ascending,
so retrieval can walk them front to back.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Any, Iterable, NamedTuple

from .corpus import PageProfile
from .ontology import Ontology

MAX_SUB_DOMINATING = 4
INDEX_FORMAT_VERSION = 1


class NoDominatingTermError(ValueError):
    """The page mentions no ontology term, so no attachment is possible."""


class DuplicatePageError(ValueError):
    """The same page id was fed to the index builder twice."""


class IndexLoadError(ValueError):
    """An index file could not be loaded."""


class IndexVersionError(IndexLoadError):
    """The index file declares an unsupported format version."""


class IndexFormatError(IndexLoadError):
    """The index file violates the format contract (shape, order, linkage)."""


class Posting(NamedTuple):
    page_id: str
    relevance: float


@dataclass(frozen=True)
class TermPostings:
    """Both posting lists of one term, already in retrieval order."""

    primary: tuple[Posting, ...] = ()
    secondary: tuple[Posting, ...] = ()


@dataclass(frozen=True)
class Extraction:
    """Attachment decision for one page: dominating term plus up to four
    sub-dominating terms in rank order."""

    page_id: str
    url: str
    dominating: str
    sub_dominating: tuple[str, ...]
    relevance: float


@dataclass(frozen=True)
class AttachmentIndex:
    """Immutable searchable index over one ontology's domain.

    `term_names` is sorted ascending and `postings` holds one entry per term,
    including terms that attached no page. Bounds are None only for an index
    with no pages at all.
    """

    domain_name: str
    term_names: tuple[str, ...]
    postings: dict[str, TermPostings]
    min_relevance: float | None
    max_relevance: float | None

    @property
    def page_count(self) -> int:
        return sum(len(tp.primary) for tp in self.postings.values())


@dataclass(frozen=True)
class BuildResult:
    index: AttachmentIndex
    extractions: tuple[Extraction, ...]
    skipped: tuple[str, ...]

    @property
    def pages_visited(self) -> int:
        return len(self.extractions) + len(self.skipped)


@lru_cache(maxsize=64)
def _weights(ontology: Ontology) -> dict[str, float]:
    return {term.name: term.weight for term in ontology.terms}


def extract(profile: PageProfile, ontology: Ontology) -> Extraction:
    """Pick the page's dominating and sub-dominating terms.

    Rank is contribution descending. On equal contribution the lower-weight
    term wins (it needed more mentions to get there); if weights tie too,
    the lexicographically smaller name wins.
    """
    if not profile.term_stats:
        raise NoDominatingTermError(f"page '{profile.page_id}' mentions no ontology term")
    weights = _weights(ontology)
    ranked = sorted(
        profile.term_stats.items(),
        key=lambda item: (-item[1].relevance, weights[item[0]], item[0]),
    )
    names = [name for name, _ in ranked]
    return Extraction(
        page_id=profile.page_id,
        url=profile.url,
        dominating=names[0],
        sub_dominating=tuple(names[1 : 1 + MAX_SUB_DOMINATING]),
        relevance=profile.relevance,
    )


def _posting_order(posting: Posting) -> tuple[float, str]:
    return (-posting.relevance, posting.page_id)


def build_index(
    profiles: Iterable[PageProfile], ontology: Ontology
) -> BuildResult:
    """Attach every page to its terms and assemble sorted posting lists.

    Pages without any term mention are skipped (reported, not indexed).
    Feeding two profiles with the same page id raises DuplicatePageError.
    """
    primary: dict[str, list[Posting]] = {name: [] for name in ontology.names}
    secondary: dict[str, list[Posting]] = {name: [] for name in ontology.names}
    extractions: list[Extraction] = []
    skipped: list[str] = []
    seen: set[str] = set()
    lo: float | None = None
    hi: float | None = None

    for profile in profiles:
        if profile.page_id in seen:
            raise DuplicatePageError(f"duplicate page id '{profile.page_id}'")
        seen.add(profile.page_id)
        try:
            extraction = extract(profile, ontology)
        except NoDominatingTermError:
            skipped.append(profile.page_id)
            continue
        extractions.append(extraction)
        posting = Posting(profile.page_id, profile.relevance)
        primary[extraction.dominating].append(posting)
        for name in extraction.sub_dominating:
            secondary[name].append(posting)
        lo = posting.relevance if lo is None else min(lo, posting.relevance)
        hi = posting.relevance if hi is None else max(hi, posting.relevance)

    postings = {
        name: TermPostings(
            primary=tuple(sorted(primary[name], key=_posting_order)),
            secondary=tuple(sorted(secondary[name], key=_posting_order)),
        )
        for name in ontology.names
    }
    index = AttachmentIndex(
        domain_name=ontology.domain_name,
        term_names=ontology.names,
        postings=postings,
        min_relevance=lo,
        max_relevance=hi,
    )
    return BuildResult(index=index, extractions=tuple(extractions), skipped=tuple(skipped))


def index_to_dict(index: AttachmentIndex) -> dict[str, Any]:
    return {
        "version": INDEX_FORMAT_VERSION,
        "domain": index.domain_name,
        "min_relevance": index.min_relevance,
        "max_relevance": index.max_relevance,
        "terms": {
            name: {
                "primary": [[p.page_id, p.relevance] for p in tp.primary],
                "secondary": [[p.page_id, p.relevance] for p in tp.secondary],
            }
            for name, tp in sorted(index.postings.items())
        },
    }


def save_index(index: AttachmentIndex, path: str | Path) -> None:
    """Write the index as JSON, full float precision, terms in name order."""
    Path(path).write_text(
        json.dumps(index_to_dict(index), indent=1) + "\n", encoding="utf-8"
    )


def _parse_posting_list(name: str, kind: str, raw: Any) -> tuple[Posting, ...]:
    if not isinstance(raw, list):
        raise IndexFormatError(f"term '{name}': {kind} postings must be a list")
    postings: list[Posting] = []
    for row in raw:
        if (
            not isinstance(row, list)
            or len(row) != 2
            or not isinstance(row[0], str)
            or not isinstance(row[1], (int, float))
            or isinstance(row[1], bool)
        ):
            raise IndexFormatError(
                f"term '{name}': {kind} posting rows must be [page_id, relevance]"
            )
        postings.append(Posting(row[0], float(row[1])))
    ordered = tuple(postings)
    keys = [_posting_order(p) for p in ordered]
    if keys != sorted(keys):
        raise IndexFormatError(f"term '{name}': {kind} postings out of order")
    ids = [p.page_id for p in ordered]
    if len(set(ids)) != len(ids):
        raise IndexFormatError(f"term '{name}': {kind} postings repeat a page id")
    return ordered


def _validate_linkage(index: AttachmentIndex) -> None:
    primary_of: dict[str, float] = {}
    for tp in index.postings.values():
        for posting in tp.primary:
            if posting.page_id in primary_of:
                raise IndexFormatError(
                    f"page '{posting.page_id}' has more than one primary posting"
                )
            primary_of[posting.page_id] = posting.relevance

    secondary_count: dict[str, int] = {}
    for name, tp in index.postings.items():
        for posting in tp.secondary:
            if posting.page_id not in primary_of:
                raise IndexFormatError(
                    f"page '{posting.page_id}' appears as secondary under '{name}' "
                    "without a primary posting"
                )
            if posting.relevance != primary_of[posting.page_id]:
                raise IndexFormatError(
                    f"page '{posting.page_id}' carries inconsistent relevance values"
                )
            secondary_count[posting.page_id] = secondary_count.get(posting.page_id, 0) + 1
    for page_id, n in secondary_count.items():
        if n > MAX_SUB_DOMINATING:
            raise IndexFormatError(
                f"page '{page_id}' has {n} secondary postings, max is {MAX_SUB_DOMINATING}"
            )

    if primary_of:
        lo = min(primary_of.values())
        hi = max(primary_of.values())
        if index.min_relevance != lo or index.max_relevance != hi:
            raise IndexFormatError("stored relevance bounds do not match postings")
    else:
        if index.min_relevance is not None or index.max_relevance is not None:
            raise IndexFormatError("relevance bounds present in an index without pages")


def index_from_dict(doc: Any) -> AttachmentIndex:
    if not isinstance(doc, dict):
        raise IndexFormatError("index document must be a JSON object")
    version = doc.get("version")
    if version != INDEX_FORMAT_VERSION:
        raise IndexVersionError(
            f"unsupported index version {version!r}, expected {INDEX_FORMAT_VERSION}"
        )
    domain = doc.get("domain")
    if not isinstance(domain, str):
        raise IndexFormatError("index document missing 'domain' string")
    raw_terms = doc.get("terms")
    if not isinstance(raw_terms, dict) or not raw_terms:
        raise IndexFormatError("index document missing non-empty 'terms' object")

    for bound in ("min_relevance", "max_relevance"):
        value = doc.get(bound)
        if value is not None and (not isinstance(value, (int, float)) or isinstance(value, bool)):
            raise IndexFormatError(f"'{bound}' must be a number or null")

    postings: dict[str, TermPostings] = {}
    for name, entry in raw_terms.items():
        if not isinstance(entry, dict):
            raise IndexFormatError(f"term '{name}': entry must be an object")
        postings[name] = TermPostings(
            primary=_parse_posting_list(name, "primary", entry.get("primary")),
            secondary=_parse_posting_list(name, "secondary", entry.get("secondary")),
        )

    index = AttachmentIndex(
        domain_name=domain,
        term_names=tuple(sorted(postings)),
        postings=postings,
        min_relevance=None if doc.get("min_relevance") is None else float(doc["min_relevance"]),
        max_relevance=None if doc.get("max_relevance") is None else float(doc["max_relevance"]),
    )
    _validate_linkage(index)
    return index


def load_index(path: str | Path) -> AttachmentIndex:
    """Load and fully validate an index file; raises IndexLoadError subtypes."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise IndexFormatError(f"cannot read index file: {exc}") from exc
    return index_from_dict(doc)
