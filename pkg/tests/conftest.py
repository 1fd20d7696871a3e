"""Shared fixtures: the five-term example ontology, direct profile builders,
and randomized corpus machinery used by the equivalence tests."""

from __future__ import annotations

import json
import random

import pytest

from ontoindex import (
    Document,
    Ontology,
    OntologyTerm,
    PageProfile,
    ResultList,
    TermStat,
    build_ontology,
    score_page,
)

# Weights are dyadic (exact in binary floating point) and chosen so the
# counts below land on the classic contribution values 45/31/27/18/15.
DEMO_WEIGHTS = {
    "mobile": 0.5,
    "price": 0.25,
    "color": 0.75,
    "battery": 0.5,
    "company": 0.25,
}
DEMO_COUNTS = {
    "mobile": 90,   # 0.5  * 90  = 45
    "price": 124,   # 0.25 * 124 = 31
    "color": 36,    # 0.75 * 36  = 27
    "battery": 36,  # 0.5  * 36  = 18
    "company": 60,  # 0.25 * 60  = 15
}


@pytest.fixture(scope="session")
def demo_ontology() -> Ontology:
    return build_ontology(
        "mobile",
        [OntologyTerm(name, weight) for name, weight in DEMO_WEIGHTS.items()],
    )


@pytest.fixture(scope="session")
def demo_profile(demo_ontology: Ontology) -> PageProfile:
    words = []
    for name, count in DEMO_COUNTS.items():
        words.extend([name] * count)
    doc = Document("demo-page", "https://example.test/demo-page", " ".join(words))
    return score_page(doc, demo_ontology)


def make_profile(ontology: Ontology, page_id: str, counts: dict[str, int]) -> PageProfile:
    """Build a PageProfile directly from term counts, bypassing tokenization.

    Accumulates relevance in canonical name order, matching score_page, so
    the floats are identical to what scoring the equivalent text would give.
    """
    stats: dict[str, TermStat] = {}
    total = 0.0
    for term in ontology.terms:
        count = counts.get(term.name, 0)
        if count:
            contribution = term.weight * count
            stats[term.name] = TermStat(count, contribution)
            total += contribution
    return PageProfile(page_id, f"https://example.test/{page_id}", stats, total)


def random_ontology(rng: random.Random, term_count: int) -> Ontology:
    weights = [round(0.05 * step, 2) for step in range(1, 21)]
    return build_ontology(
        "synthetic",
        [
            OntologyTerm(f"term{i:03d}", rng.choice(weights))
            for i in range(term_count)
        ],
    )


def random_profiles(
    rng: random.Random, ontology: Ontology, pages: int
) -> list[PageProfile]:
    profiles = []
    for i in range(pages):
        term_names = rng.sample(
            ontology.names, rng.randint(1, min(len(ontology.names), 8))
        )
        counts = {name: rng.randint(1, 50) for name in term_names}
        profiles.append(make_profile(ontology, f"page-{i:04d}", counts))
    return profiles


def result_bytes(result: ResultList) -> bytes:
    """Canonical serialization used for byte-identical comparisons."""
    return json.dumps(
        {
            "requested": result.requested,
            "entries": [
                [entry.page_id, entry.relevance, entry.source]
                for entry in result.entries
            ],
        },
        sort_keys=True,
    ).encode()
