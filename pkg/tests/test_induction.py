import numpy as np
import pytest

from topicnav.errors import SeedNeverCovered, ValidationError
from topicnav.induction import (
    SeedSpec,
    TopicGroup,
    build_signatures,
    check_seed_coverage,
    induce_topics,
    label_topics,
)
from topicnav.lda import LdaConfig, LdaModel
from topicnav.vectorspace import Vocabulary

from conftest import planted_corpus
from topicnav.vectorspace import build_vocabulary


def make_vocab(terms):
    return Vocabulary(
        terms=list(terms),
        index={t: i for i, t in enumerate(terms)},
        df=np.ones(len(terms), dtype=np.int64),
    )


def make_model(rows, n_topics=None):
    tw = np.array(rows, dtype=float)
    return LdaModel(
        topic_word=tw,
        config=LdaConfig(n_topics=tw.shape[0], iterations=2, burn_in=1, sample_lag=1),
        vocab_size=tw.shape[1],
    )


def make_groups(vocab, specs):
    """specs: list of (seed, {term: weight})."""
    out = []
    for seed, weights in specs:
        gw = np.zeros(len(vocab))
        for t, w in weights.items():
            gw[vocab.index[t]] = w
        out.append(TopicGroup(seed=seed, member_topics=[], group_weight=gw))
    return out


class TestSeedCoverage:
    def test_absent_seed_uncovered(self):
        vocab = make_vocab(["a", "b"])
        model = make_model([[0.7, 0.3]])
        spec = SeedSpec(seeds=("missing",), seed_floor=0.1)
        (cov,) = check_seed_coverage(model, vocab, spec)
        assert not cov.in_vocab and not cov.covered

    def test_boundary_inclusive(self):
        vocab = make_vocab(["a", "b"])
        model = make_model([[0.25, 0.75]])
        spec = SeedSpec(seeds=("a",), seed_floor=0.25)
        (cov,) = check_seed_coverage(model, vocab, spec)
        assert cov.covered and cov.max_weight == pytest.approx(0.25)

    def test_below_floor_uncovered(self):
        vocab = make_vocab(["a", "b"])
        model = make_model([[0.1, 0.9]])
        spec = SeedSpec(seeds=("a",), seed_floor=0.25)
        (cov,) = check_seed_coverage(model, vocab, spec)
        assert not cov.covered


class TestLabelTopics:
    def test_single_seed_gets_all_topics(self):
        vocab = make_vocab(["a", "b", "c"])
        model = make_model([[0.5, 0.3, 0.2], [0.1, 0.8, 0.1], [0.2, 0.2, 0.6]])
        (group,) = label_topics(model, vocab, ["b"])
        assert group.member_topics == [0, 1, 2]

    def test_argmax_hand_trace(self):
        # t0: A=.5, t1: B=.6, t2: A=.4 B=.1  ->  G_A={t0,t2}, G_B={t1}
        vocab = make_vocab(["A", "B", "other"])
        model = make_model([
            [0.5, 0.0, 0.5],
            [0.0, 0.6, 0.4],
            [0.4, 0.1, 0.5],
        ])
        g_a, g_b = label_topics(model, vocab, ["A", "B"])
        assert g_a.member_topics == [0, 2]
        assert g_b.member_topics == [1]

    def test_tie_goes_to_earlier_seed(self):
        vocab = make_vocab(["A", "B", "x"])
        model = make_model([[0.3, 0.3, 0.4]])
        g_a, g_b = label_topics(model, vocab, ["A", "B"])
        assert g_a.member_topics == [0]
        assert g_b.member_topics == []

    def test_partition_property(self):
        rng = np.random.default_rng(5)
        vocab = make_vocab([f"w{i}" for i in range(8)])
        tw = rng.dirichlet(np.ones(8), size=6)
        model = make_model(tw)
        groups = label_topics(model, vocab, ["w0", "w3", "w5"])
        seen = sorted(m for g in groups for m in g.member_topics)
        assert seen == list(range(6))

    def test_group_weight_is_sum(self):
        vocab = make_vocab(["A", "B", "x"])
        model = make_model([[0.5, 0.0, 0.5], [0.4, 0.1, 0.5]])
        (g_a, g_b) = label_topics(model, vocab, ["A", "B"])
        assert g_a.group_weight[vocab.index["x"]] == pytest.approx(1.0)

    def test_group_weight_max_mode(self):
        vocab = make_vocab(["A", "B", "x"])
        model = make_model([[0.5, 0.0, 0.5], [0.4, 0.1, 0.5]])
        (g_a, _) = label_topics(model, vocab, ["A", "B"], aggregate="max")
        assert g_a.group_weight[vocab.index["x"]] == pytest.approx(0.5)

    def test_unknown_seed_rejected(self):
        vocab = make_vocab(["a"])
        model = make_model([[1.0]])
        with pytest.raises(ValidationError):
            label_topics(model, vocab, ["zz"])


class TestBuildSignatures:
    def test_hand_trace_no_conflict(self):
        vocab = make_vocab(["A", "B", "z", "x", "w", "y", "q"])
        groups = make_groups(vocab, [
            ("A", {"A": 0.9, "z": 0.35, "x": 0.3, "w": 0.25, "y": 0.2}),
            ("B", {"B": 0.6, "x": 0.25, "q": 0.15}),
        ])
        sigs = build_signatures(groups, 3, vocab)
        assert sigs[0].signature == ["A", "z", "w"]
        assert sigs[1].signature == ["B", "x", "q"]

    def test_same_round_conflict_renominates(self):
        # both groups want x in round 1; A's weight .3 > B's .25
        vocab = make_vocab(["A", "B", "x", "q"])
        groups = make_groups(vocab, [
            ("A", {"A": 0.9, "x": 0.3}),
            ("B", {"B": 0.6, "x": 0.25, "q": 0.15}),
        ])
        sigs = build_signatures(groups, 2, vocab)
        assert sigs[0].signature == ["A", "x"]
        assert sigs[1].signature == ["B", "q"]

    def test_conflict_tie_goes_to_earlier_group(self):
        vocab = make_vocab(["A", "B", "x", "q"])
        groups = make_groups(vocab, [
            ("A", {"A": 0.9, "x": 0.25}),
            ("B", {"B": 0.6, "x": 0.25, "q": 0.15}),
        ])
        sigs = build_signatures(groups, 2, vocab)
        assert sigs[0].signature == ["A", "x"]
        assert sigs[1].signature == ["B", "q"]

    def test_single_group_k1(self):
        vocab = make_vocab(["A", "x"])
        groups = make_groups(vocab, [("A", {"A": 1.0, "x": 0.5})])
        sigs = build_signatures(groups, 1, vocab)
        assert sigs[0].signature == ["A"]

    def test_exhaustion_warning(self):
        vocab = make_vocab(["A", "x"])
        groups = make_groups(vocab, [("A", {"A": 1.0, "x": 0.5})])
        warnings = []
        sigs = build_signatures(groups, 5, vocab, warnings=warnings)
        assert sigs[0].signature == ["A", "x"]
        assert len(warnings) == 1 and "exhausted" in warnings[0]


def oracle_signatures(seed_terms, weight_dicts, k):
    """Literal simulation of the round protocol with plain dicts.

    weight_dicts[g] maps term -> weight (absent terms unavailable).
    Ties: within a group, lower term id; between groups, earlier group.
    Returns list of signatures (lists of terms).
    """
    n = len(seed_terms)
    pools = [dict(w) for w in weight_dicts]
    for pool in pools:
        for s in seed_terms:
            pool.pop(s, None)
        for t in [t for t, w in pool.items() if w <= 0]:
            pool.pop(t)
    sigs = [[s] for s in seed_terms]
    assigned = set(seed_terms)
    done = [False] * n
    while True:
        active = [g for g in range(n) if not done[g] and len(sigs[g]) < k]
        if not active:
            break
        noms = {}
        queue = list(active)
        while queue:
            g = queue.pop(0)
            cands = [(w, t) for t, w in pools[g].items() if t not in assigned]
            if not cands:
                done[g] = True
                continue
            best_w = max(w for w, _ in cands)
            term = min(t for w, t in cands if w == best_w)
            holder = next((h for h, t2 in noms.items() if t2 == term), None)
            if holder is None:
                noms[g] = term
            elif (pools[g][term], -g) > (pools[holder][term], -holder):
                del noms[holder]
                noms[g] = term
                del pools[holder][term]
                queue.append(holder)
            else:
                del pools[g][term]
                queue.append(g)
        if not noms:
            break
        for g, term in noms.items():
            sigs[g].append(term)
            assigned.add(term)
    return sigs


class TestSignatureOracle:
    def random_instance(self, rng):
        # zero-padded names so lexicographic term order equals vocab order
        v = int(rng.integers(3, 13))
        terms = [f"w{i:02d}" for i in range(v)]
        n_groups = int(rng.integers(1, min(4, v) + 1))
        seeds = list(rng.choice(terms, size=n_groups, replace=False))
        k = int(rng.integers(1, 6))
        weight_dicts = []
        for g in range(n_groups):
            # discrete weights force frequent exact ties
            w = {t: float(rng.integers(0, 5)) / 4.0 for t in terms}
            w[seeds[g]] = 1.0
            weight_dicts.append(w)
        return terms, seeds, weight_dicts, k

    def run_production(self, terms, seeds, weight_dicts, k):
        vocab = make_vocab(terms)
        groups = make_groups(vocab, list(zip(seeds, weight_dicts)))
        return [s.signature for s in build_signatures(groups, k, vocab)]

    def test_matches_oracle_on_randomized_instances(self):
        rng = np.random.default_rng(2024)
        for _ in range(300):
            terms, seeds, weight_dicts, k = self.random_instance(rng)
            got = self.run_production(terms, seeds, weight_dicts, k)
            want = oracle_signatures(seeds, weight_dicts, k)
            assert got == want

    def test_invariants_on_randomized_instances(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            terms, seeds, weight_dicts, k = self.random_instance(rng)
            sigs = self.run_production(terms, seeds, weight_dicts, k)
            flat = [t for s in sigs for t in s]
            assert len(flat) == len(set(flat))  # disjoint
            for sig, seed in zip(sigs, seeds):
                assert sig[0] == seed
                assert len(sig) <= k

    def test_determinism(self):
        rng = np.random.default_rng(99)
        terms, seeds, weight_dicts, k = self.random_instance(rng)
        a = self.run_production(terms, seeds, weight_dicts, k)
        b = self.run_production(terms, seeds, weight_dicts, k)
        assert a == b


@pytest.fixture(scope="module")
def corpus():
    docs, doc_topics, topic_vocabs = planted_corpus(300, 3, words_per_topic=15, seed=4)
    vocab = build_vocabulary(docs, min_df=1, max_df_ratio=1.0)
    return docs, topic_vocabs, vocab


class TestInduceTopics:
    def fast_template(self):
        return LdaConfig(n_topics=1, iterations=120, burn_in=60, sample_lag=20,
                         rng_seed=2)

    def test_planted_returns_at_n1(self, corpus):
        docs, topic_vocabs, vocab = corpus
        seeds = tuple(tv[0] for tv in topic_vocabs)  # top planted word each
        spec = SeedSpec(seeds=seeds, k=5, n_start=1, n_max=3)
        result = induce_topics(docs, vocab, spec, self.fast_template())
        assert result.final_n == 1
        assert len(result.topics) == 3
        for t, seed in zip(result.topics, seeds):
            assert t.signature[0] == seed

    def test_unknown_seed_exhausts_escalation(self, corpus):
        docs, topic_vocabs, vocab = corpus
        spec = SeedSpec(seeds=(topic_vocabs[0][0], "nunca"), k=3, n_start=1, n_max=2)
        with pytest.raises(SeedNeverCovered) as exc:
            induce_topics(docs, vocab, spec, self.fast_template())
        assert "nunca" in str(exc.value)
        assert exc.value.n_max == 2

    def test_signatures_disjoint(self, corpus):
        docs, topic_vocabs, vocab = corpus
        seeds = tuple(tv[0] for tv in topic_vocabs)
        spec = SeedSpec(seeds=seeds, k=6, n_start=1, n_max=3)
        result = induce_topics(docs, vocab, spec, self.fast_template())
        flat = [t for topic in result.topics for t in topic.signature]
        assert len(flat) == len(set(flat))


class TestSeedSpecValidation:
    def test_rejects_empty_seeds(self):
        with pytest.raises(ValidationError):
            SeedSpec(seeds=())

    def test_rejects_duplicate_seeds(self):
        with pytest.raises(ValidationError):
            SeedSpec(seeds=("a", "a"))

    def test_rejects_bad_escalation_range(self):
        with pytest.raises(ValidationError):
            SeedSpec(seeds=("a",), n_start=5, n_max=2)
