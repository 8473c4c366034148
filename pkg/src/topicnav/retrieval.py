"""Topical-query retrieval: signature terms as a TF-IDF query vector,
documents ranked by cosine similarity above a threshold, with a
minimum-document-length filter for fragment-heavy OCR corpora."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import AllTermsUnknown, ValidationError
from .vectorspace import SparseVector, TermDocumentIndex, cosine, tfidf_weight


@dataclass(frozen=True)
class TopicalQuery:
    terms: tuple[str, ...]
    threshold: float = 0.5
    min_terms: int = 0
    limit: int | None = None
    # optional per-term weights (induced-topic group weights); default tf=1
    term_weights: dict[str, float] | None = None

    def __post_init__(self):
        if not self.terms:
            raise ValidationError("query needs at least one term")
        if not 0.0 <= self.threshold <= 1.0:
            raise ValidationError("threshold must be in [0, 1]")
        if self.min_terms < 0:
            raise ValidationError("min_terms must be >= 0")
        if self.limit is not None and self.limit < 1:
            raise ValidationError("limit must be >= 1 when given")


@dataclass
class Hit:
    id: str
    score: float
    doc_length: int


@dataclass
class RetrievalResult:
    hits: list[Hit]
    query: TopicalQuery
    unknown_terms: list[str] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "query": {
                "terms": list(self.query.terms),
                "threshold": self.query.threshold,
                "min_terms": self.query.min_terms,
                "limit": self.query.limit,
            },
            "warnings": [f"term not in vocabulary: {t}" for t in self.unknown_terms],
            "hits": [
                {"id": h.id, "score": h.score, "doc_length": h.doc_length}
                for h in self.hits
            ],
        }


def signature_to_query_vector(
    terms: Sequence[str],
    index: TermDocumentIndex,
    term_weights: dict[str, float] | None = None,
) -> tuple[SparseVector, list[str]]:
    """TF-IDF query vector in the corpus term space; duplicates count once.

    Returns (vector, unknown_terms). Raises AllTermsUnknown when nothing
    maps into the vocabulary.
    """
    vocab = index.vocabulary
    unknown: list[str] = []
    entries: dict[int, float] = {}
    seen: set[str] = set()
    for t in terms:
        if t in seen:
            continue
        seen.add(t)
        pos = vocab.index.get(t)
        if pos is None:
            unknown.append(t)
            continue
        idf_part = tfidf_weight(1, int(vocab.df[pos]), index.n_docs)
        scale = term_weights.get(t, 1.0) if term_weights else 1.0
        entries[pos] = scale * idf_part
    if len(unknown) == len(seen):
        raise AllTermsUnknown(f"no query term is in the vocabulary: {sorted(seen)}")
    return SparseVector.from_dict(entries), unknown


def retrieve(query: TopicalQuery, index: TermDocumentIndex) -> RetrievalResult:
    """Documents with doc_length >= min_terms and cosine >= threshold,
    score-descending, ties by ascending id, truncated to limit."""
    qvec, unknown = signature_to_query_vector(query.terms, index, query.term_weights)
    hits: list[Hit] = []
    for doc_id, dvec in index.doc_vectors.items():
        length = index.doc_lengths[doc_id]
        if length < query.min_terms:
            continue
        score = cosine(qvec, dvec)
        if score >= query.threshold:
            hits.append(Hit(id=doc_id, score=score, doc_length=length))
    hits.sort(key=lambda h: (-h.score, h.id))
    if query.limit is not None:
        hits = hits[: query.limit]
    return RetrievalResult(hits=hits, query=query, unknown_terms=unknown)
