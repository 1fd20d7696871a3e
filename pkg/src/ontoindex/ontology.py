"""Domain ontology: weighted terms with synonyms, kept sorted by name for
logarithmic lookup.

The term array is sorted by canonical (case-folded) name because that is the
key user queries arrive with; importance ordering is available as a derived
view (`terms_by_weight`).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Any, Iterable, Mapping, Sequence

from .tokens import canonical_name, tokenize


class OntologyError(ValueError):
    """An ontology document failed validation; the message names the term."""


class TermNotFoundError(LookupError):
    """A referenced term name does not exist in the ontology."""

    def __init__(self, term: str):
        super().__init__(f"unknown term '{term}'")
        self.term = term


@dataclass(frozen=True)
class OntologyTerm:
    """One domain term: canonical single-token name, weight in (0, 1], synonyms.

    Synonym phrases keep their source order and are stored case-folded with
    single-space token joins so that string equality matches token equality.
    """

    name: str
    weight: float
    synonyms: tuple[str, ...] = ()


@dataclass(frozen=True)
class Ontology:
    """Validated term set for one domain.

    `terms` is sorted ascending by canonical name and `names` is the parallel
    lookup array used for binary search. Instances are immutable and safe for
    unrestricted concurrent reads.
    """

    domain_name: str
    terms: tuple[OntologyTerm, ...]
    names: tuple[str, ...]

    @property
    def term_count(self) -> int:
        return len(self.terms)


def binary_search(names: Sequence[str], key: str) -> tuple[int | None, int]:
    """Locate `key` in a sorted name array.

    Returns (position, comparisons) with position None when absent. Each loop
    probe counts as one comparison; the count never exceeds floor(log2 n) + 1.
    """
    lo, hi = 0, len(names) - 1
    comparisons = 0
    while lo <= hi:
        mid = (lo + hi) // 2
        probe = names[mid]
        comparisons += 1
        if probe == key:
            return mid, comparisons
        if probe < key:
            lo = mid + 1
        else:
            hi = mid - 1
    return None, comparisons


def lookup_term_counted(ontology: Ontology, name: str) -> tuple[int | None, int]:
    """Binary-search a term by case-folded name, reporting the probe count."""
    return binary_search(ontology.names, canonical_name(name))


def lookup_term(ontology: Ontology, name: str) -> int | None:
    return lookup_term_counted(ontology, name)[0]


def term_weight(ontology: Ontology, name: str) -> float:
    position = lookup_term(ontology, name)
    if position is None:
        raise TermNotFoundError(name)
    return ontology.terms[position].weight


def terms_by_weight(ontology: Ontology) -> list[OntologyTerm]:
    """Importance-ordered view: weight descending, name as the tiebreak."""
    return sorted(ontology.terms, key=lambda t: (-t.weight, t.name))


def _phrase(tokens: Sequence[str]) -> str:
    return " ".join(tokens)


def build_ontology(domain_name: str, terms: Iterable[OntologyTerm]) -> Ontology:
    """Validate and canonicalize terms, producing a name-sorted Ontology.

    Raises OntologyError naming the offending term on: empty term set,
    multi-token or empty names, weight outside (0, 1], duplicate names,
    synonym duplicates within a term, a synonym equal to its own term name,
    or a synonym colliding with any other term's name or synonym.
    """
    canonical: list[OntologyTerm] = []
    # Canonical token tuple -> human-readable owner, for collision reporting.
    claims: dict[tuple[str, ...], str] = {}

    for term in terms:
        name_tokens = tokenize(term.name)
        if len(name_tokens) != 1:
            raise OntologyError(
                f"term '{term.name}': name must be a single non-empty token"
            )
        name = name_tokens[0]
        if not isinstance(term.weight, (int, float)) or isinstance(term.weight, bool):
            raise OntologyError(f"term '{name}': weight must be a number")
        weight = float(term.weight)
        if not 0.0 < weight <= 1.0:
            raise OntologyError(
                f"term '{name}': weight out of range, expected 0 < weight <= 1, got {term.weight}"
            )
        if (name,) in claims:
            raise OntologyError(f"term '{name}': duplicate term name")
        claims[(name,)] = f"term '{name}'"

        seen: set[tuple[str, ...]] = set()
        synonyms: list[str] = []
        for raw in term.synonyms:
            syn_tokens = tuple(tokenize(raw))
            if not syn_tokens:
                raise OntologyError(f"term '{name}': empty synonym")
            if syn_tokens == (name,):
                raise OntologyError(
                    f"term '{name}': synonym '{raw}' repeats the term name"
                )
            if syn_tokens in seen:
                raise OntologyError(f"term '{name}': duplicate synonym '{raw}'")
            seen.add(syn_tokens)
            synonyms.append(_phrase(syn_tokens))
        canonical.append(OntologyTerm(name, weight, tuple(synonyms)))

    if not canonical:
        raise OntologyError("ontology must contain at least one term")

    # Cross-term attribution must be unambiguous: every synonym token tuple is
    # claimed exactly once across the whole ontology, and never shadows a name.
    for term in canonical:
        for synonym in term.synonyms:
            key = tuple(synonym.split(" "))
            owner = claims.get(key)
            if owner is not None:
                raise OntologyError(
                    f"term '{term.name}': synonym '{synonym}' collides with {owner}"
                )
            claims[key] = f"synonym '{synonym}' of term '{term.name}'"

    ordered = tuple(sorted(canonical, key=lambda t: t.name))
    return Ontology(domain_name, ordered, tuple(t.name for t in ordered))


def _synonyms_field(value: Any, name: str) -> tuple[str, ...]:
    # Legacy synonym tables are comma-separated strings; split and trim.
    if value is None:
        return ()
    if isinstance(value, str):
        return tuple(part.strip() for part in value.split(",") if part.strip())
    if isinstance(value, list) and all(isinstance(s, str) for s in value):
        return tuple(value)
    raise OntologyError(f"term '{name}': synonyms must be a list of strings")


def ontology_from_dict(doc: Mapping[str, Any]) -> Ontology:
    if not isinstance(doc, Mapping):
        raise OntologyError("malformed ontology document: expected a JSON object")
    domain = doc.get("domain")
    if not isinstance(domain, str):
        raise OntologyError("malformed ontology document: missing 'domain' string")
    raw_terms = doc.get("terms")
    if not isinstance(raw_terms, list):
        raise OntologyError("malformed ontology document: missing 'terms' list")

    terms = []
    for entry in raw_terms:
        if not isinstance(entry, Mapping):
            raise OntologyError("malformed ontology document: term entry is not an object")
        name = entry.get("name")
        if not isinstance(name, str):
            raise OntologyError("malformed ontology document: term entry without a name")
        weight = entry.get("weight")
        terms.append(OntologyTerm(name, weight, _synonyms_field(entry.get("synonyms"), name)))
    return build_ontology(domain, terms)


def load_ontology(source: str | Path | IO[str] | Mapping[str, Any]) -> Ontology:
    """Load and validate an ontology JSON document from a path, file, or dict."""
    try:
        if hasattr(source, "read"):
            doc = json.load(source)  # type: ignore[arg-type]
        elif isinstance(source, (str, Path)):
            doc = json.loads(Path(source).read_text(encoding="utf-8"))
        else:
            doc = source  # already-parsed document
    except (OSError, json.JSONDecodeError) as exc:
        raise OntologyError(f"malformed ontology document: {exc}") from exc
    return ontology_from_dict(doc)


def ontology_to_dict(ontology: Ontology) -> dict[str, Any]:
    return {
        "domain": ontology.domain_name,
        "terms": [
            {"name": t.name, "weight": t.weight, "synonyms": list(t.synonyms)}
            for t in ontology.terms
        ],
    }


def save_ontology(ontology: Ontology, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(ontology_to_dict(ontology), indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
