"""Confusion matrices, precision, and top-k precision against ground truth.

Recall and F1 are computed but informational only: with a one-class task
this unbalanced (relevant sets are a fraction of a percent of the corpus)
they are uniformly tiny and say nothing about retrieval quality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import UndefinedMetric, ValidationError


@dataclass(frozen=True)
class GroundTruth:
    relevant_ids: frozenset[str]
    corpus_size: int

    def __post_init__(self):
        if len(self.relevant_ids) > self.corpus_size:
            raise ValidationError("more relevant ids than documents in the corpus")


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    fn: int
    tn: int

    def __post_init__(self):
        if min(self.tp, self.fp, self.fn, self.tn) < 0:
            raise ValidationError("confusion cells must be non-negative")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn

    @classmethod
    def from_marginals(
        cls, n_predicted: int, tp: int, n_relevant: int, corpus_size: int
    ) -> "ConfusionMatrix":
        """Rebuild the full matrix from published totals."""
        fp = n_predicted - tp
        fn = n_relevant - tp
        tn = corpus_size - tp - fp - fn
        return cls(tp=tp, fp=fp, fn=fn, tn=tn)


def confusion(
    predicted_positive: Iterable[str],
    truth: GroundTruth,
    corpus_ids: Iterable[str] | None = None,
) -> ConfusionMatrix:
    """Cells partition the corpus; predicted ids must belong to it."""
    pred = set(predicted_positive)
    if corpus_ids is not None:
        corpus = set(corpus_ids)
        outside = pred - corpus
        if outside:
            raise ValidationError(f"predicted ids outside corpus: {sorted(outside)[:5]}")
        if not truth.relevant_ids <= corpus:
            raise ValidationError("ground-truth ids outside corpus")
    tp = len(pred & truth.relevant_ids)
    fp = len(pred) - tp
    fn = len(truth.relevant_ids) - tp
    tn = truth.corpus_size - tp - fp - fn
    return ConfusionMatrix(tp=tp, fp=fp, fn=fn, tn=tn)


def precision(cm: ConfusionMatrix) -> float:
    if cm.tp + cm.fp == 0:
        raise UndefinedMetric("precision undefined with no positive predictions")
    return cm.tp / (cm.tp + cm.fp)


def recall(cm: ConfusionMatrix) -> float:
    """Informational only for the unbalanced one-class setting."""
    if cm.tp + cm.fn == 0:
        raise UndefinedMetric("recall undefined with no relevant documents")
    return cm.tp / (cm.tp + cm.fn)


def f1(cm: ConfusionMatrix) -> float:
    """Informational only for the unbalanced one-class setting."""
    p = precision(cm)
    r = recall(cm)
    if p + r == 0:
        return 0.0
    return 2 * p * r / (p + r)


def top_k_precision(ranked_ids: Sequence[str], truth: GroundTruth, k: int) -> float:
    """Relevant fraction of the first min(k, len) ranked ids, over k."""
    if k < 1:
        raise ValidationError("k must be >= 1")
    head = ranked_ids[:k]
    return sum(1 for d in head if d in truth.relevant_ids) / k


def load_ground_truth(path, corpus_size: int) -> GroundTruth:
    """One relevant document id per line, '#' comments."""
    from pathlib import Path

    ids = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        doc_id = line.split("#", 1)[0].strip()
        if doc_id:
            ids.add(doc_id)
    return GroundTruth(relevant_ids=frozenset(ids), corpus_size=corpus_size)
