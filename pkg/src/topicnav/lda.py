"""Collapsed Gibbs sampling LDA over the preprocessed corpus.

The topic count is deliberately over-fragmented (M = n * N) so that one
subject split across decades of shifting vocabulary lands in several
topics; downstream induction re-merges them by seed word.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numba import njit
from scipy.special import gammaln

from .errors import EmptyCorpusError, ValidationError
from .pipeline import Document
from .vectorspace import Vocabulary


@dataclass(frozen=True)
class LdaConfig:
    n_topics: int
    alpha: float | None = None  # None -> 50 / n_topics
    beta: float = 0.01
    iterations: int = 1000
    burn_in: int = 500
    sample_lag: int = 50
    rng_seed: int = 0
    use_last_sweep: bool = False

    def __post_init__(self):
        if self.n_topics < 1:
            raise ValidationError("n_topics must be >= 1")
        if not self.iterations > self.burn_in >= 0:
            raise ValidationError("need iterations > burn_in >= 0")
        if self.alpha is not None and self.alpha <= 0:
            raise ValidationError("alpha must be > 0")
        if self.beta <= 0:
            raise ValidationError("beta must be > 0")
        if self.sample_lag < 1:
            raise ValidationError("sample_lag must be >= 1")

    @property
    def effective_alpha(self) -> float:
        return self.alpha if self.alpha is not None else 50.0 / self.n_topics


@dataclass
class LdaModel:
    topic_word: np.ndarray  # (M, V) rows are probability distributions
    config: LdaConfig
    vocab_size: int
    log_likelihood_trace: list[float] = field(default_factory=list)
    # sum of all topic-word counts after each sweep; used by conservation checks
    count_trace: list[int] = field(default_factory=list)

    @property
    def n_topics(self) -> int:
        return self.topic_word.shape[0]


@njit(cache=True)
def _gibbs_sweep(doc_ids, word_ids, z, n_dt, n_tw, n_t, alpha, beta, rng_state):
    """One full sweep of collapsed Gibbs updates.

    rng_state is a one-element uint64 array holding the splitmix64 state;
    keeping it inside an array avoids signedness changes at the Python
    boundary, which would silently fork the stream.
    """
    n_topics = n_tw.shape[0]
    vbeta = beta * n_tw.shape[1]
    p = np.empty(n_topics, dtype=np.float64)
    state = rng_state[0]
    for i in range(len(word_ids)):
        d = doc_ids[i]
        w = word_ids[i]
        t = z[i]
        n_dt[d, t] -= 1
        n_tw[t, w] -= 1
        n_t[t] -= 1
        total = 0.0
        for k in range(n_topics):
            total += (n_dt[d, k] + alpha) * (n_tw[k, w] + beta) / (n_t[k] + vbeta)
            p[k] = total
        # splitmix64 step
        state = state + np.uint64(0x9E3779B97F4A7C15)
        bits = state
        bits = (bits ^ (bits >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        bits = (bits ^ (bits >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        bits = bits ^ (bits >> np.uint64(31))
        u = (bits >> np.uint64(11)) * (1.0 / 9007199254740992.0) * total
        t_new = 0
        while t_new < n_topics - 1 and p[t_new] < u:
            t_new += 1
        z[i] = t_new
        n_dt[d, t_new] += 1
        n_tw[t_new, w] += 1
        n_t[t_new] += 1
    rng_state[0] = state


def _log_likelihood(n_tw: np.ndarray, n_t: np.ndarray, beta: float) -> float:
    """Collapsed log p(w | z): product of Dirichlet-multinomial terms per topic."""
    v = n_tw.shape[1]
    ll = n_tw.shape[0] * (gammaln(v * beta) - v * gammaln(beta))
    ll += gammaln(n_tw + beta).sum() - gammaln(n_t + v * beta).sum()
    return float(ll)


def fit_lda(
    docs: Sequence[Document], vocab: Vocabulary, config: LdaConfig
) -> LdaModel:
    """Fit by collapsed Gibbs sampling; deterministic for a fixed rng_seed.

    topic_word rows are (count + beta) / (topic total + V*beta), averaged
    over post-burn-in snapshots taken every sample_lag sweeps (or the last
    sweep alone when use_last_sweep is set).
    """
    v = len(vocab)
    m = config.n_topics
    doc_ids_l, word_ids_l = [], []
    for di, doc in enumerate(docs):
        for t in doc.tokens:
            pos = vocab.index.get(t)
            if pos is not None:
                doc_ids_l.append(di)
                word_ids_l.append(pos)
    if not doc_ids_l:
        raise EmptyCorpusError("no in-vocabulary tokens to fit on")
    doc_ids = np.array(doc_ids_l, dtype=np.int64)
    word_ids = np.array(word_ids_l, dtype=np.int64)
    n_tokens = len(word_ids)
    alpha = config.effective_alpha
    beta = config.beta

    # deterministic initial assignment from the same splitmix64 stream
    state = (config.rng_seed ^ 0xD1B54A32D192ED03) & 0xFFFFFFFFFFFFFFFF
    z = np.empty(n_tokens, dtype=np.int64)
    for i in range(n_tokens):
        state, bits = _splitmix64_py(state)
        z[i] = bits % m
    rng_state = np.array([state], dtype=np.uint64)

    n_dt = np.zeros((len(docs), m), dtype=np.int64)
    n_tw = np.zeros((m, v), dtype=np.int64)
    n_t = np.zeros(m, dtype=np.int64)
    np.add.at(n_dt, (doc_ids, z), 1)
    np.add.at(n_tw, (z, word_ids), 1)
    np.add.at(n_t, z, 1)

    phi_acc = np.zeros((m, v), dtype=np.float64)
    n_snapshots = 0
    ll_trace: list[float] = []
    count_trace: list[int] = []
    for sweep in range(1, config.iterations + 1):
        _gibbs_sweep(doc_ids, word_ids, z, n_dt, n_tw, n_t, alpha, beta, rng_state)
        count_trace.append(int(n_t.sum()))
        ll_trace.append(_log_likelihood(n_tw, n_t, beta))
        past_burn = sweep > config.burn_in
        if past_burn and (sweep - config.burn_in) % config.sample_lag == 0:
            phi_acc += (n_tw + beta) / (n_t + v * beta)[:, None]
            n_snapshots += 1
    if config.use_last_sweep or n_snapshots == 0:
        topic_word = (n_tw + beta) / (n_t + v * beta)[:, None]
    else:
        topic_word = phi_acc / n_snapshots
    return LdaModel(
        topic_word=topic_word,
        config=config,
        vocab_size=v,
        log_likelihood_trace=ll_trace,
        count_trace=count_trace,
    )


def _splitmix64_py(state: int) -> tuple[int, int]:
    """Python mirror of the jitted splitmix64 step, for the cheap init path."""
    state = (state + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    z = z ^ (z >> 31)
    return state, z


def word_weight(model: LdaModel, topic: int, term: int) -> float:
    if not 0 <= topic < model.n_topics:
        raise IndexError(f"topic {topic} out of range [0, {model.n_topics})")
    if not 0 <= term < model.vocab_size:
        raise IndexError(f"term {term} out of range [0, {model.vocab_size})")
    return float(model.topic_word[topic, term])


def top_words(model: LdaModel, topic: int, k: int) -> list[tuple[int, float]]:
    """k highest-weight term positions, weight descending, ties by position."""
    if k < 1:
        raise ValidationError("k must be >= 1")
    row = model.topic_word[topic]
    # stable sort on -weight keeps ascending-position tie order
    order = np.argsort(-row, kind="stable")[: min(k, model.vocab_size)]
    return [(int(i), float(row[i])) for i in order]
