"""Seed-guided induced topics over a fragmented LDA model.

Each LDA topic is labeled by the seed with the greatest weight in it;
topics sharing a label merge into a group, and a round-based greedy
allocation extends each seed to a K-word signature with no term repeated
across signatures.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import SeedNeverCovered, ValidationError
from .lda import LdaConfig, LdaModel, fit_lda
from .pipeline import Document
from .vectorspace import Vocabulary


@dataclass(frozen=True)
class SeedSpec:
    seeds: tuple[str, ...]
    k: int = 10
    n_start: int = 2
    n_max: int = 8
    seed_floor: float | None = None  # None -> smoothing floor + 1/(10V)

    def __post_init__(self):
        if not self.seeds:
            raise ValidationError("at least one seed is required")
        if len(set(self.seeds)) != len(self.seeds):
            raise ValidationError("seeds must be distinct")
        if self.k < 1:
            raise ValidationError("K must be >= 1")
        if not 1 <= self.n_start <= self.n_max:
            raise ValidationError("need 1 <= n_start <= n_max")


@dataclass
class TopicGroup:
    seed: str
    member_topics: list[int]
    group_weight: np.ndarray  # (V,) aggregated topic_word over member topics


@dataclass
class InducedTopic:
    seed: str
    signature: list[str]  # seed first
    weights: dict[str, float]


@dataclass
class SeedCoverage:
    seed: str
    in_vocab: bool
    max_weight: float
    covered: bool


@dataclass
class InductionResult:
    topics: list[InducedTopic]
    final_n: int
    model: LdaModel
    coverage: list[SeedCoverage]
    warnings: list[str] = field(default_factory=list)


def default_seed_floor(model: LdaModel) -> float:
    """Just above the prior-smoothing floor, so a seed must actually occur."""
    return float(model.topic_word.min()) + 1.0 / (10.0 * model.vocab_size)


def check_seed_coverage(
    model: LdaModel, vocab: Vocabulary, spec: SeedSpec
) -> list[SeedCoverage]:
    floor = spec.seed_floor if spec.seed_floor is not None else default_seed_floor(model)
    report = []
    for seed in spec.seeds:
        pos = vocab.index.get(seed)
        if pos is None:
            report.append(SeedCoverage(seed, False, 0.0, False))
        else:
            mx = float(model.topic_word[:, pos].max())
            report.append(SeedCoverage(seed, True, mx, mx >= floor))
    return report


def label_topics(
    model: LdaModel,
    vocab: Vocabulary,
    seeds: Sequence[str],
    aggregate: str = "sum",
) -> list[TopicGroup]:
    """Assign every LDA topic to the seed with the greatest weight in it
    (ties go to the earlier seed), then aggregate member-topic word weights.

    aggregate="sum" re-merges the modes fragmentation split apart;
    "max" keeps the single strongest mode per word.
    """
    seed_pos = []
    for s in seeds:
        if s not in vocab.index:
            raise ValidationError(f"seed not in vocabulary: {s!r}")
        seed_pos.append(vocab.index[s])
    if aggregate not in ("sum", "max"):
        raise ValidationError("aggregate must be 'sum' or 'max'")
    seed_weights = model.topic_word[:, seed_pos]  # (M, n_seeds)
    # argmax returns the first max: earlier seed wins ties
    labels = np.argmax(seed_weights, axis=1)
    groups = []
    for si, seed in enumerate(seeds):
        members = np.flatnonzero(labels == si)
        if len(members) == 0:
            gw = np.zeros(model.vocab_size)
        elif aggregate == "sum":
            gw = model.topic_word[members].sum(axis=0)
        else:
            gw = model.topic_word[members].max(axis=0)
        groups.append(
            TopicGroup(seed=seed, member_topics=members.tolist(), group_weight=gw)
        )
    return groups


def build_signatures(
    groups: Sequence[TopicGroup],
    k: int,
    vocab: Vocabulary,
    warnings: list[str] | None = None,
) -> list[InducedTopic]:
    """Round-based greedy allocation of non-repeating K-word signatures.

    Every signature starts as [seed]. Per round, each unfinished group
    nominates its highest-weight available term; a term wanted by several
    groups goes to the one where its weight is greatest (ties by group
    order) and the losers strike it from their pools. A term assigned in
    any earlier round is unavailable regardless of weight.
    """
    if k < 1:
        raise ValidationError("K must be >= 1")
    n_groups = len(groups)
    v = len(vocab)
    for g in groups:
        if g.seed not in vocab.index:
            raise ValidationError(f"seed not in vocabulary: {g.seed!r}")
    seed_ids = {vocab.index[g.seed] for g in groups}
    # available[g]: candidate pool; seeds are pre-assigned, zero weight is no evidence
    available = [
        (g.group_weight > 0.0) & ~np.isin(np.arange(v), list(seed_ids))
        for g in groups
    ]
    assigned: set[int] = set(seed_ids)
    signatures: list[list[int]] = [[vocab.index[g.seed]] for g in groups]
    exhausted = [False] * n_groups

    while True:
        active = [g for g in range(n_groups) if not exhausted[g] and len(signatures[g]) < k]
        if not active:
            break
        # nominate, resolving same-round conflicts by renomination
        nominations: dict[int, int] = {}  # group -> term
        pending = list(active)
        while pending:
            g = pending.pop(0)
            gw = groups[g].group_weight
            mask = available[g].copy()
            if assigned:
                mask[list(assigned)] = False
            if not mask.any():
                exhausted[g] = True
                continue
            cands = np.flatnonzero(mask)
            term = int(cands[np.argmax(gw[cands])])
            # conflict with a provisional nomination from this round?
            rival = next((h for h, t in nominations.items() if t == term), None)
            if rival is None:
                nominations[g] = term
                continue
            # greater group weight wins; equal weights go to the earlier group
            rival_w = groups[rival].group_weight[term]
            if gw[term] > rival_w or (gw[term] == rival_w and g < rival):
                del nominations[rival]
                nominations[g] = term
                available[rival][term] = False
                pending.append(rival)
            else:
                available[g][term] = False
                pending.append(g)
        for g, term in nominations.items():
            signatures[g].append(term)
            assigned.add(term)
        if not nominations:
            break

    out = []
    for g, group in enumerate(groups):
        terms = [vocab.terms[i] for i in signatures[g]]
        if len(terms) < k:
            msg = (
                f"signature for seed {group.seed!r} exhausted its candidate pool "
                f"at {len(terms)} of {k} terms"
            )
            if warnings is not None:
                warnings.append(msg)
        out.append(
            InducedTopic(
                seed=group.seed,
                signature=terms,
                weights={t: float(group.group_weight[vocab.index[t]]) for t in terms},
            )
        )
    return out


def induce_topics(
    docs: Sequence[Document],
    vocab: Vocabulary,
    spec: SeedSpec,
    lda_config_template: LdaConfig | None = None,
    aggregate: str = "sum",
    on_fit: Callable[[int, LdaModel], None] | None = None,
) -> InductionResult:
    """Escalation loop: fit LDA with M = n*N for n = n_start..n_max until
    every seed is covered, then label topics and build signatures."""
    n_seeds = len(spec.seeds)
    coverage: list[SeedCoverage] = []
    for n in range(spec.n_start, spec.n_max + 1):
        cfg_kwargs = dict(
            alpha=None, beta=0.01, iterations=200, burn_in=100,
            sample_lag=20, rng_seed=0,
        )
        if lda_config_template is not None:
            t = lda_config_template
            cfg_kwargs = dict(
                alpha=t.alpha, beta=t.beta, iterations=t.iterations,
                burn_in=t.burn_in, sample_lag=t.sample_lag,
                rng_seed=t.rng_seed, use_last_sweep=t.use_last_sweep,
            )
        config = LdaConfig(n_topics=n * n_seeds, **cfg_kwargs)
        model = fit_lda(docs, vocab, config)
        if on_fit is not None:
            on_fit(n, model)
        coverage = check_seed_coverage(model, vocab, spec)
        if all(c.covered for c in coverage):
            warnings: list[str] = []
            groups = label_topics(model, vocab, spec.seeds, aggregate=aggregate)
            topics = build_signatures(groups, spec.k, vocab, warnings=warnings)
            return InductionResult(
                topics=topics, final_n=n, model=model,
                coverage=coverage, warnings=warnings,
            )
    uncovered = [c.seed for c in coverage if not c.covered]
    raise SeedNeverCovered(uncovered, spec.n_max)
