"""Pipeline stages over an experiment directory, shared by CLI and service
so both surfaces emit byte-identical JSON for identical inputs."""

from __future__ import annotations

import dataclasses
from pathlib import Path
from typing import Sequence

from . import store
from .errors import ArtifactMissing, ValidationError
from .induction import InductionResult, SeedSpec, induce_topics
from .lda import LdaConfig, fit_lda
from .pipeline import (
    Document,
    LexiconTable,
    PipelineConfig,
    load_corpus,
    load_lexicon,
    load_stemmer_rules,
    load_stopwords,
    preprocess,
)
from .retrieval import RetrievalResult, TopicalQuery, retrieve
from .vectorspace import build_index, build_vocabulary


def ingest(
    exp_dir: str | Path,
    corpus_path: str | Path,
    format: str,
    stopwords_path: str | Path | None = None,
    lexicon_path: str | Path | None = None,
    stemmer_path: str | Path | None = None,
    min_token_len: int = 2,
) -> list[Document]:
    """Load, preprocess, and persist the corpus into the experiment dir."""
    config = PipelineConfig(
        stopword_list=load_stopwords(stopwords_path) if stopwords_path else frozenset(),
        stemmer_rules=load_stemmer_rules(stemmer_path) if stemmer_path else [],
        min_token_len=min_token_len,
    )
    lexicon = load_lexicon(lexicon_path) if lexicon_path else LexiconTable.empty()
    docs = [preprocess(d, config, lexicon) for d in load_corpus(corpus_path, format)]
    with store.experiment_lock(exp_dir):
        store.save_artifact(
            exp_dir, "corpus", docs,
            config={
                "corpus_path": str(corpus_path),
                "format": format,
                "min_token_len": min_token_len,
                "stopwords": str(stopwords_path) if stopwords_path else None,
                "lexicon": str(lexicon_path) if lexicon_path else None,
                "stemmer": str(stemmer_path) if stemmer_path else None,
            },
        )
    return docs


def build(
    exp_dir: str | Path, min_df: int = 2, max_df_ratio: float = 0.5
) -> None:
    """Vocabulary + TF-IDF index from the persisted corpus."""
    docs = store.load_artifact(exp_dir, "corpus")
    vocab = build_vocabulary(docs, min_df=min_df, max_df_ratio=max_df_ratio)
    index = build_index(docs, vocab)
    with store.experiment_lock(exp_dir):
        store.save_artifact(
            exp_dir, "vocab", vocab,
            config={"min_df": min_df, "max_df_ratio": max_df_ratio},
        )
        store.save_artifact(exp_dir, "index", index)


def run_lda(exp_dir: str | Path, config: LdaConfig) -> None:
    docs = store.load_artifact(exp_dir, "corpus")
    vocab = store.load_artifact(exp_dir, "vocab")
    model = fit_lda(docs, vocab, config)
    with store.experiment_lock(exp_dir):
        store.save_artifact(
            exp_dir, "lda", model, config=dataclasses.asdict(config)
        )


def induce(
    exp_dir: str | Path,
    seeds: Sequence[str],
    k: int = 10,
    n_start: int = 2,
    n_max: int = 8,
    lda_template: LdaConfig | None = None,
    aggregate: str = "sum",
) -> dict:
    """Escalation loop over persisted corpus+vocab; persists topics.json
    (and the final LDA model) and returns the topics payload."""
    docs = store.load_artifact(exp_dir, "corpus")
    vocab = store.load_artifact(exp_dir, "vocab")
    spec = SeedSpec(seeds=tuple(seeds), k=k, n_start=n_start, n_max=n_max)
    result = induce_topics(docs, vocab, spec, lda_config_template=lda_template,
                           aggregate=aggregate)
    payload = induction_payload(result, spec)
    with store.experiment_lock(exp_dir):
        store.save_artifact(
            exp_dir, "lda", result.model,
            config=dataclasses.asdict(result.model.config),
        )
        store.save_artifact(exp_dir, "topics", payload)
    return payload


def induction_payload(result: InductionResult, spec: SeedSpec) -> dict:
    return {
        "seeds": list(spec.seeds),
        "k": spec.k,
        "final_n": result.final_n,
        "model_ref": "lda",
        "coverage": [
            {
                "seed": c.seed,
                "in_vocab": c.in_vocab,
                "max_weight": c.max_weight,
                "covered": c.covered,
            }
            for c in result.coverage
        ],
        "topics": [
            {"seed": t.seed, "signature": t.signature, "weights": t.weights}
            for t in result.topics
        ],
        "warnings": result.warnings,
    }


def query(
    exp_dir: str | Path,
    terms: Sequence[str] | None = None,
    topic_seed: str | None = None,
    threshold: float = 0.5,
    min_terms: int = 0,
    limit: int | None = None,
    use_signature_weights: bool = False,
) -> RetrievalResult:
    """Query by explicit terms or by a persisted induced-topic seed."""
    index = store.load_artifact(exp_dir, "index")
    term_weights = None
    if topic_seed is not None:
        topics = store.load_artifact(exp_dir, "topics")
        match = next((t for t in topics["topics"] if t["seed"] == topic_seed), None)
        if match is None:
            raise ValidationError(f"no induced topic with seed {topic_seed!r}")
        terms = match["signature"]
        if use_signature_weights:
            term_weights = match["weights"]
    elif not terms:
        raise ValidationError("either terms or a topic seed is required")
    q = TopicalQuery(
        terms=tuple(terms), threshold=threshold, min_terms=min_terms,
        limit=limit, term_weights=term_weights,
    )
    return retrieve(q, index)


def document_text(exp_dir: str | Path, doc_id: str) -> dict:
    """Raw (pre-normalization) text plus token count, for reading hits."""
    docs = store.load_artifact(exp_dir, "corpus")
    for d in docs:
        if d.id == doc_id:
            return {
                "id": d.id,
                "date": d.date.isoformat() if d.date else None,
                "raw_text": d.raw_text,
                "token_count": len(d.tokens),
            }
    raise ArtifactMissing(f"no document with id {doc_id!r}")
