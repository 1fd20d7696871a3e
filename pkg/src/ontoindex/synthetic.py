"""Synthetic corpora with planted ground truth.

Pages are generated so that each one has a known dominating term and a known
ordered set of sub-dominating terms. Terms are partitioned into disjoint
groups of (sub_terms + 1); a page draws all its mentions from one group, with
occurrence counts shaped so the weighted contributions are strictly
descending in the planted order. Generation is fully deterministic in the
seed, byte for byte, including across retry attempts.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Iterable, Sequence

from .corpus import Document, score_page
from .indexer import extract
from .ontology import Ontology, OntologyTerm, build_ontology, save_ontology

_SYNONYM_CHANCE = 0.25
_MAX_ATTEMPTS = 25

# Neutral vocabulary for padding; tokens colliding with the active ontology
# are filtered out before use.
_FILLER_WORDS = (
    "the", "and", "with", "from", "this", "that", "have", "offers", "latest",
    "review", "deal", "best", "new", "users", "features", "great", "value",
    "top", "shop", "guide", "today", "launch", "series", "lineup", "hands",
    "after", "week", "testing", "overall", "verdict", "pros", "cons",
)


class GenerationError(RuntimeError):
    """The generator could not realize the planted structure for a page."""


@dataclass(frozen=True)
class PlantedPage:
    """Ground truth for one generated page."""

    page_id: str
    dominating: str
    sub_dominating: tuple[str, ...]


def default_ontology() -> Ontology:
    """A twelve-term consumer-mobile ontology used by the CLI and tests."""
    return build_ontology(
        "mobile",
        [
            OntologyTerm("mobile", 0.95, ("cellphone", "cell phone", "smartphone")),
            OntologyTerm("price", 0.9, ("cost", "rate")),
            OntologyTerm("battery", 0.85, ("battery life",)),
            OntologyTerm("camera", 0.8, ()),
            OntologyTerm("display", 0.75, ("screen",)),
            OntologyTerm("color", 0.7, ("colour",)),
            OntologyTerm("company", 0.65, ("brand", "manufacturer")),
            OntologyTerm("storage", 0.6, ("memory",)),
            OntologyTerm("processor", 0.55, ("chipset",)),
            OntologyTerm("warranty", 0.5, ("guarantee",)),
            OntologyTerm("charger", 0.45, ("adapter",)),
            OntologyTerm("network", 0.4, ("connectivity",)),
        ],
    )


def _ontology_tokens(ontology: Ontology) -> set[str]:
    tokens: set[str] = set()
    for term in ontology.terms:
        tokens.add(term.name)
        for synonym in term.synonyms:
            tokens.update(synonym.split(" "))
    return tokens


def _filler_pool(ontology: Ontology) -> tuple[str, ...]:
    taken = _ontology_tokens(ontology)
    pool = tuple(w for w in _FILLER_WORDS if w not in taken)
    if len(pool) >= 5:
        return pool
    extra = tuple(f"filler{i}" for i in range(16) if f"filler{i}" not in taken)
    return pool + extra


def _term_groups(ontology: Ontology, group_size: int) -> list[tuple[OntologyTerm, ...]]:
    terms = ontology.terms  # already sorted by name
    group_count = len(terms) // group_size
    if group_count == 0:
        raise ValueError(
            f"ontology has {len(terms)} terms, need at least {group_size} "
            f"for {group_size - 1} sub-dominating terms per page"
        )
    return [
        tuple(terms[g * group_size : (g + 1) * group_size])
        for g in range(group_count)
    ]


def _mention_counts(slots: Sequence[OntologyTerm], scale: int) -> list[int]:
    # Target contribution for slot j is (len - j) * scale; taking
    # floor(target / weight) occurrences lands within one weight unit below
    # the target, which keeps consecutive contributions strictly descending
    # for any scale >= 1 and weights in (0, 1].
    counts = []
    for j, term in enumerate(slots):
        target = (len(slots) - j) * scale
        counts.append(max(1, int(target / term.weight)))
    return counts


def _compose_text(
    rng: random.Random,
    slots: Sequence[OntologyTerm],
    counts: Sequence[int],
    noise_terms: Sequence[tuple[OntologyTerm, int]],
    fillers: Sequence[str],
) -> str:
    mentions: list[str] = []
    for term, count in list(zip(slots, counts)) + list(noise_terms):
        for _ in range(count):
            if term.synonyms and rng.random() < _SYNONYM_CHANCE:
                mentions.append(rng.choice(term.synonyms))
            else:
                mentions.append(term.name)
    padding = [rng.choice(fillers) for _ in range(rng.randint(len(mentions), 2 * len(mentions)))]
    items = mentions + padding
    rng.shuffle(items)

    lines = [" ".join(items[i : i + 12]) for i in range(0, len(items), 12)]
    return "\n".join(lines) + "\n"


def generate_corpus(
    ontology: Ontology,
    pages: int,
    seed: int,
    *,
    sub_terms: int | None = None,
    noise: float = 0.0,
) -> tuple[list[Document], list[PlantedPage]]:
    """Generate `pages` documents with known attachment structure.

    With noise == 0 every page is verified: scoring and extracting the
    generated text must reproduce the planted dominating/sub-dominating
    terms exactly, retrying with fresh randomness otherwise. With noise > 0
    that fraction of pages additionally mentions out-of-group terms a few
    times, which can perturb the extracted sub-dominating set; the returned
    ground truth still records the planted intent.

    sub_terms defaults to as many as the ontology allows, capped at four.
    """
    if sub_terms is None:
        sub_terms = min(4, ontology.term_count - 1)
    if not 0 <= sub_terms <= 4:
        raise ValueError("sub_terms must be between 0 and 4")
    if not 0.0 <= noise <= 1.0:
        raise ValueError("noise must be a probability")

    groups = _term_groups(ontology, sub_terms + 1)
    fillers = _filler_pool(ontology)

    documents: list[Document] = []
    planted: list[PlantedPage] = []
    for i in range(pages):
        group = groups[i % len(groups)]
        rotation = (i // len(groups)) % len(group)
        slots = group[rotation:] + group[:rotation]
        page_id = f"page-{i:05d}"
        url = f"https://example.test/{ontology.domain_name}/{page_id}"
        expected = PlantedPage(page_id, slots[0].name, tuple(t.name for t in slots[1:]))

        for attempt in range(_MAX_ATTEMPTS):
            rng = random.Random(f"{seed}:{i}:{attempt}")
            scale = rng.randint(1, 5)
            counts = _mention_counts(slots, scale)

            noise_terms: list[tuple[OntologyTerm, int]] = []
            if noise and rng.random() < noise:
                candidates = [
                    t for t in ontology.terms if t.name not in {s.name for s in slots}
                ]
                rng.shuffle(candidates)
                for term in candidates[: rng.randint(1, 3)]:
                    noise_terms.append((term, rng.randint(1, 3)))

            content = _compose_text(rng, slots, counts, noise_terms, fillers)
            doc = Document(page_id, url, content)
            if noise_terms:
                # Perturbation is the point; accept without verification.
                break
            extraction = extract(score_page(doc, ontology), ontology)
            if (
                extraction.dominating == expected.dominating
                and extraction.sub_dominating == expected.sub_dominating
            ):
                break
        else:
            raise GenerationError(
                f"page {page_id}: could not realize planted terms after "
                f"{_MAX_ATTEMPTS} attempts"
            )
        documents.append(doc)
        planted.append(expected)

    return documents, planted


def write_corpus(
    out_dir: str | Path,
    documents: Iterable[Document],
    planted: Iterable[PlantedPage],
    ontology: Ontology,
    seed: int,
) -> None:
    """Write corpus.jsonl, manifest.json, and ontology.json into a directory.

    Output is byte-deterministic for a given generator call: keys are sorted
    and floats serialize at full precision.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    with (out / "corpus.jsonl").open("w", encoding="utf-8") as fh:
        for doc in documents:
            fh.write(
                json.dumps(
                    {"id": doc.page_id, "url": doc.url, "content": doc.content},
                    sort_keys=True,
                )
                + "\n"
            )

    manifest: dict[str, Any] = {
        "domain": ontology.domain_name,
        "seed": seed,
        "pages": [
            {
                "page_id": p.page_id,
                "dominating": p.dominating,
                "sub_dominating": list(p.sub_dominating),
            }
            for p in planted
        ],
    }
    (out / "manifest.json").write_text(
        json.dumps(manifest, indent=1, sort_keys=True) + "\n", encoding="utf-8"
    )
    save_ontology(ontology, out / "ontology.json")


def load_manifest(path: str | Path) -> list[PlantedPage]:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    return [
        PlantedPage(row["page_id"], row["dominating"], tuple(row["sub_dominating"]))
        for row in doc["pages"]
    ]
