"""Ontology-term web-page indexing and quota-mixed retrieval."""

from .corpus import (
    CorpusError,
    Document,
    PageProfile,
    TermStat,
    count_occurrences,
    is_domain_page,
    load_documents,
    score_corpus,
    score_page,
    tokenize,
)
from .indexer import (
    AttachmentIndex,
    BuildResult,
    DuplicatePageError,
    Extraction,
    IndexFormatError,
    IndexLoadError,
    IndexVersionError,
    NoDominatingTermError,
    Posting,
    TermPostings,
    build_index,
    extract,
    load_index,
    save_index,
)
from .ontology import (
    Ontology,
    OntologyError,
    OntologyTerm,
    TermNotFoundError,
    build_ontology,
    load_ontology,
    lookup_term,
    lookup_term_counted,
    save_ontology,
    terms_by_weight,
)
from .retrieval import (
    EmptyIndexError,
    Query,
    QueryError,
    ResultEntry,
    ResultList,
    linear_scan_search,
    quotas,
    relevance_bounds,
    search,
)

__version__ = "0.1.0"

__all__ = [
    "AttachmentIndex",
    "BuildResult",
    "CorpusError",
    "Document",
    "DuplicatePageError",
    "EmptyIndexError",
    "Extraction",
    "IndexFormatError",
    "IndexLoadError",
    "IndexVersionError",
    "NoDominatingTermError",
    "Ontology",
    "OntologyError",
    "OntologyTerm",
    "PageProfile",
    "Posting",
    "Query",
    "QueryError",
    "ResultEntry",
    "ResultList",
    "TermNotFoundError",
    "TermPostings",
    "TermStat",
    "build_index",
    "build_ontology",
    "count_occurrences",
    "extract",
    "is_domain_page",
    "linear_scan_search",
    "load_documents",
    "load_index",
    "load_ontology",
    "lookup_term",
    "lookup_term_counted",
    "quotas",
    "relevance_bounds",
    "save_index",
    "save_ontology",
    "score_corpus",
    "score_page",
    "search",
    "terms_by_weight",
    "tokenize",
    "__version__",
]
