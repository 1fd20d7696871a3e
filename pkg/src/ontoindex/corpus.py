"""Page ingestion and scoring.

A page's contribution from one term is weight * occurrences, where occurrences
counts the canonical name plus every synonym phrase. Page relevance is the sum
of those contributions over all ontology terms.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any, Iterable, Sequence

from .ontology import Ontology, OntologyTerm
from .tokens import tokenize

__all__ = [
    "CorpusError",
    "Document",
    "TermStat",
    "PageProfile",
    "tokenize",
    "strip_tags",
    "count_occurrences",
    "score_page",
    "is_domain_page",
    "load_documents",
    "score_corpus",
    "save_profiles",
    "load_profiles",
]

_TAG_RE = re.compile(r"<[^>]*>")


class CorpusError(ValueError):
    """A corpus source is malformed (bad JSONL row, duplicate page id, ...)."""


@dataclass(frozen=True)
class Document:
    """Raw page text plus identity; `url` falls back to the id for local files."""

    page_id: str
    url: str
    content: str


@dataclass(frozen=True)
class TermStat:
    """Occurrence count and weighted contribution of one term on one page."""

    count: int
    relevance: float


@dataclass(frozen=True)
class PageProfile:
    """Per-page extraction input: every matched term with its contribution.

    `term_stats` only holds terms with count > 0. `relevance` is the sum of
    all contributions, accumulated in canonical name order so that repeated
    scoring of the same page reproduces the identical float.
    """

    page_id: str
    url: str
    term_stats: dict[str, TermStat] = field(default_factory=dict)
    relevance: float = 0.0


def strip_tags(text: str) -> str:
    """Replace markup tags with spaces so adjacent words do not fuse."""
    return _TAG_RE.sub(" ", text)


@lru_cache(maxsize=4096)
def _patterns(term: OntologyTerm) -> tuple[tuple[str, ...], ...]:
    # Longest pattern first so a multi-word synonym is not eaten token-by-token
    # by a shorter one; ties keep source order (name before synonyms).
    patterns = [(term.name,)] + [tuple(s.split(" ")) for s in term.synonyms]
    return tuple(sorted(patterns, key=lambda p: -len(p)))


def count_occurrences(tokens: Sequence[str], term: OntologyTerm) -> int:
    """Count non-overlapping mentions of a term's name or any synonym.

    Matching is greedy left-to-right over the token stream; at each position
    the longest matching pattern wins and consumes its tokens.
    """
    patterns = _patterns(term)
    singles = {p[0] for p in patterns if len(p) == 1}
    multi = [p for p in patterns if len(p) > 1]

    if not multi:
        return sum(1 for tok in tokens if tok in singles)

    count = 0
    i = 0
    n = len(tokens)
    while i < n:
        matched = 0
        for pattern in multi:
            length = len(pattern)
            if length <= n - i and tuple(tokens[i : i + length]) == pattern:
                matched = length
                break
        if not matched and tokens[i] in singles:
            matched = 1
        if matched:
            count += 1
            i += matched
        else:
            i += 1
    return count


def score_page(doc: Document, ontology: Ontology) -> PageProfile:
    """Score one page against every ontology term."""
    tokens = tokenize(doc.content)
    stats: dict[str, TermStat] = {}
    total = 0.0
    for term in ontology.terms:
        count = count_occurrences(tokens, term)
        if count:
            contribution = term.weight * count
            stats[term.name] = TermStat(count, contribution)
            total += contribution
    return PageProfile(doc.page_id, doc.url, stats, total)


def is_domain_page(profile: PageProfile, relevance_limit: float) -> bool:
    """A page belongs to the domain when its relevance reaches the limit."""
    return profile.relevance >= relevance_limit


def _documents_from_dir(root: Path) -> Iterable[Document]:
    files = sorted(p for p in root.iterdir() if p.is_file())
    for path in files:
        yield Document(page_id=path.stem, url=str(path), content=path.read_text(encoding="utf-8"))


def _documents_from_jsonl(path: Path) -> Iterable[Document]:
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
            if not isinstance(row, dict) or not isinstance(row.get("id"), str):
                raise CorpusError(f"{path}:{lineno}: row must be an object with a string 'id'")
            content = row.get("content")
            if not isinstance(content, str):
                raise CorpusError(f"{path}:{lineno}: row must carry string 'content'")
            yield Document(
                page_id=row["id"],
                url=row.get("url") or row["id"],
                content=content,
            )


def load_documents(path: str | Path) -> list[Document]:
    """Load pages from a directory of text files or a JSONL file.

    Directory mode: one page per file, page id is the file stem, url is the
    file path. JSONL mode: objects with id, url, content. Duplicate page ids
    raise CorpusError either way.
    """
    root = Path(path)
    if root.is_dir():
        docs = list(_documents_from_dir(root))
    elif root.is_file():
        docs = list(_documents_from_jsonl(root))
    else:
        raise CorpusError(f"corpus path does not exist: {root}")

    seen: set[str] = set()
    for doc in docs:
        if doc.page_id in seen:
            raise CorpusError(f"duplicate page id '{doc.page_id}'")
        seen.add(doc.page_id)
    return docs


def score_corpus(
    documents: Iterable[Document],
    ontology: Ontology,
    relevance_limit: float = 0.0,
    *,
    strip_html: bool = False,
) -> tuple[list[PageProfile], list[str]]:
    """Score every page, splitting domain pages from rejected ones.

    Returns (profiles, rejected_page_ids). A page is rejected exactly when
    its relevance falls below the limit; pages that mention no term at all
    survive a zero limit here and are skipped later at index build.
    """
    profiles: list[PageProfile] = []
    rejected: list[str] = []
    for doc in documents:
        if strip_html:
            doc = Document(doc.page_id, doc.url, strip_tags(doc.content))
        profile = score_page(doc, ontology)
        if is_domain_page(profile, relevance_limit):
            profiles.append(profile)
        else:
            rejected.append(doc.page_id)
    return profiles, rejected


def save_profiles(profiles: Iterable[PageProfile], path: str | Path) -> None:
    """Persist profiles as JSONL, one page per line, terms in name order."""
    with Path(path).open("w", encoding="utf-8") as fh:
        for profile in profiles:
            row: dict[str, Any] = {
                "page_id": profile.page_id,
                "url": profile.url,
                "relevance": profile.relevance,
                "terms": {
                    name: {"count": stat.count, "relevance": stat.relevance}
                    for name, stat in sorted(profile.term_stats.items())
                },
            }
            fh.write(json.dumps(row, sort_keys=True) + "\n")


def load_profiles(path: str | Path) -> list[PageProfile]:
    profiles: list[PageProfile] = []
    with Path(path).open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
            try:
                stats = {
                    name: TermStat(int(entry["count"]), float(entry["relevance"]))
                    for name, entry in row["terms"].items()
                }
                profiles.append(
                    PageProfile(row["page_id"], row["url"], stats, float(row["relevance"]))
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise CorpusError(f"{path}:{lineno}: malformed profile row") from exc
    return profiles
