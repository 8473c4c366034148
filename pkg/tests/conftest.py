import numpy as np
import pytest

from topicnav.pipeline import Document
from topicnav.vectorspace import build_vocabulary


def make_docs(token_lists, prefix="d"):
    return [
        Document(id=f"{prefix}{i}", raw_text="", tokens=list(toks))
        for i, toks in enumerate(token_lists, start=1)
    ]


def planted_corpus(
    n_docs,
    n_topics,
    words_per_topic=20,
    doc_len=40,
    noise_ratio=0.0,
    noise_pool=400,
    seed=0,
):
    """Corpus drawn from disjoint-support planted topics.

    Each topic's word distribution is a decaying ramp over its own block of
    the vocabulary, so every topic has a well-defined top word. Optionally a
    noise_ratio fraction of tokens is replaced with gibberish drawn from a
    pool of low-frequency strings (OCR-style junk that survives tokenization).

    Returns (docs, doc_topics, topic_vocabs).
    """
    rng = np.random.default_rng(seed)
    # letters-only names survive letter-boundary tokenization unchanged
    letters = "abcdefghijklmnopqrst"
    topic_vocabs = [
        [f"top{letters[k]}{letters[i // 20]}{letters[i % 20]}" for i in range(words_per_topic)]
        for k in range(n_topics)
    ]
    # decaying weights: top word is unambiguous
    probs = np.array([1.0 / (i + 1) for i in range(words_per_topic)])
    probs /= probs.sum()
    noise_words = [
        "".join(rng.choice(list("bcdfghjklmnpqrstvwxz"), size=7)) for _ in range(noise_pool)
    ]
    docs, doc_topics = [], []
    for d in range(n_docs):
        k = int(rng.integers(n_topics))
        toks = list(rng.choice(topic_vocabs[k], size=doc_len, p=probs))
        if noise_ratio > 0:
            n_noise = int(round(noise_ratio * doc_len))
            pos = rng.choice(doc_len, size=n_noise, replace=False)
            for pz in pos:
                toks[pz] = noise_words[int(rng.integers(noise_pool))]
        docs.append(Document(id=f"doc{d:05d}", raw_text=" ".join(toks), tokens=toks))
        doc_topics.append(k)
    return docs, doc_topics, topic_vocabs


@pytest.fixture
def two_topic_corpus():
    docs, doc_topics, vocabs = planted_corpus(200, 2, words_per_topic=15, seed=1)
    vocab = build_vocabulary(docs, min_df=1, max_df_ratio=1.0)
    return docs, doc_topics, vocabs, vocab
