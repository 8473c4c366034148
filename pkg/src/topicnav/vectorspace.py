"""Vocabulary, sparse TF-IDF term-document matrix, and cosine similarity."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import EmptyCorpusError, ValidationError
from .pipeline import Document


@dataclass
class Vocabulary:
    terms: list[str]
    index: dict[str, int]
    df: np.ndarray  # per-term document frequency, aligned with terms

    def __len__(self):
        return len(self.terms)

    def __contains__(self, term: str) -> bool:
        return term in self.index

    def __eq__(self, other):
        return (
            isinstance(other, Vocabulary)
            and self.terms == other.terms
            and np.array_equal(self.df, other.df)
        )


@dataclass
class SparseVector:
    """Strictly increasing positions; zero weights are never stored."""

    indices: np.ndarray  # int64, sorted ascending
    values: np.ndarray   # float64, all nonzero

    @classmethod
    def from_dict(cls, entries: dict[int, float]) -> "SparseVector":
        items = sorted((i, v) for i, v in entries.items() if v != 0.0)
        idx = np.array([i for i, _ in items], dtype=np.int64)
        val = np.array([v for _, v in items], dtype=np.float64)
        return cls(indices=idx, values=val)

    @classmethod
    def empty(cls) -> "SparseVector":
        return cls(np.empty(0, dtype=np.int64), np.empty(0, dtype=np.float64))

    def to_dict(self) -> dict[int, float]:
        return dict(zip(self.indices.tolist(), self.values.tolist()))

    @property
    def nnz(self) -> int:
        return len(self.indices)

    def norm(self) -> float:
        return float(np.sqrt(np.dot(self.values, self.values)))

    def __eq__(self, other):
        return (
            isinstance(other, SparseVector)
            and np.array_equal(self.indices, other.indices)
            and np.array_equal(self.values, other.values)
        )


@dataclass
class TermDocumentIndex:
    vocabulary: Vocabulary
    doc_vectors: dict[str, SparseVector]
    doc_lengths: dict[str, int]
    n_docs: int

    def __eq__(self, other):
        return (
            isinstance(other, TermDocumentIndex)
            and self.vocabulary == other.vocabulary
            and self.doc_lengths == other.doc_lengths
            and self.n_docs == other.n_docs
            and self.doc_vectors == other.doc_vectors
        )


def build_vocabulary(
    docs: Sequence[Document], min_df: int = 2, max_df_ratio: float = 0.5
) -> Vocabulary:
    """Terms with min_df <= df <= max_df_ratio * n_docs, in first-appearance order."""
    if not docs:
        raise EmptyCorpusError("cannot build a vocabulary from an empty corpus")
    if min_df < 1:
        raise ValidationError("min_df must be >= 1")
    if not 0 < max_df_ratio <= 1:
        raise ValidationError("max_df_ratio must be in (0, 1]")
    df_counts: dict[str, int] = {}
    for doc in docs:
        for t in set(doc.tokens):
            df_counts[t] = df_counts.get(t, 0) + 1
    # first-appearance order across the token stream, not per-set order
    order: dict[str, None] = {}
    for doc in docs:
        for t in doc.tokens:
            order.setdefault(t)
    max_df = max_df_ratio * len(docs)
    terms = [t for t in order if min_df <= df_counts[t] <= max_df]
    return Vocabulary(
        terms=terms,
        index={t: i for i, t in enumerate(terms)},
        df=np.array([df_counts[t] for t in terms], dtype=np.int64),
    )


def tfidf_weight(tf: float, df: float, n_docs: float) -> float:
    """tf * ln(n_docs / df); the classic unsmoothed form."""
    if tf < 1:
        raise ValidationError("tf must be >= 1")
    if not 1 <= df <= n_docs:
        raise ValidationError("df must satisfy 1 <= df <= n_docs")
    return tf * math.log(n_docs / df)


def build_index(docs: Sequence[Document], vocab: Vocabulary) -> TermDocumentIndex:
    """Sparse TF-IDF vectors per document; out-of-vocabulary tokens count
    toward doc_lengths only. Zero-weight terms (df == n_docs) are dropped."""
    n_docs = len(docs)
    doc_vectors: dict[str, SparseVector] = {}
    doc_lengths: dict[str, int] = {}
    for doc in docs:
        doc_lengths[doc.id] = len(doc.tokens)
        tf: dict[int, int] = {}
        for t in doc.tokens:
            pos = vocab.index.get(t)
            if pos is not None:
                tf[pos] = tf.get(pos, 0) + 1
        entries = {
            pos: tfidf_weight(count, int(vocab.df[pos]), n_docs)
            for pos, count in tf.items()
        }
        doc_vectors[doc.id] = SparseVector.from_dict(entries)
    return TermDocumentIndex(
        vocabulary=vocab, doc_vectors=doc_vectors, doc_lengths=doc_lengths, n_docs=n_docs
    )


def cosine(x: SparseVector, y: SparseVector) -> float:
    """cos(x, y) = x.y / (||x|| ||y||); 0 when either vector is empty."""
    if x.nnz == 0 or y.nnz == 0:
        return 0.0
    _, xi, yi = np.intersect1d(x.indices, y.indices, assume_unique=True, return_indices=True)
    if len(xi) == 0:
        return 0.0
    dot = float(np.dot(x.values[xi], y.values[yi]))
    return dot / (x.norm() * y.norm())
