"""Dance video annotation store and retrieval engine."""

from ._dvcm import (
    Corpus,
    Error,
    Index,
    InfeasibleParams,
    IntegrityError,
    ParseError,
    QueryError,
    QuerySyntaxError,
    allen_relation,
    build_index,
    canonical_query,
    classify_song,
    corpus_from_json,
    fixture_eval,
    generate,
    load_corpus,
    precision_recall,
    query,
    validate,
)

__all__ = [
    "Corpus",
    "Error",
    "Index",
    "InfeasibleParams",
    "IntegrityError",
    "ParseError",
    "QueryError",
    "QuerySyntaxError",
    "allen_relation",
    "build_index",
    "canonical_query",
    "classify_song",
    "corpus_from_json",
    "fixture_eval",
    "generate",
    "load_corpus",
    "precision_recall",
    "query",
    "validate",
]
