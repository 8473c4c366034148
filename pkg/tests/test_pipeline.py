import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from topicnav.errors import CorpusFormatError, DuplicateDocumentId, ValidationError
from topicnav.pipeline import (
    Document,
    LexiconTable,
    PipelineConfig,
    load_corpus,
    load_lexicon,
    load_stemmer_rules,
    load_stopwords,
    normalize_text,
    preprocess,
    standardize,
    tokenize,
)


class TestLoadCorpus:
    def test_jsonl_three_lines(self, tmp_path):
        f = tmp_path / "c.jsonl"
        f.write_text(
            '{"id": "a", "text": "um"}\n'
            '{"id": "b", "text": "dois", "date": "1930-05-01"}\n'
            '{"id": "c", "text": "tres"}\n'
        )
        docs = load_corpus(f, "jsonl")
        assert [d.id for d in docs] == ["a", "b", "c"]
        assert docs[1].date.isoformat() == "1930-05-01"
        assert all(d.tokens == [] for d in docs)

    def test_empty_file(self, tmp_path):
        f = tmp_path / "c.jsonl"
        f.write_text("")
        assert load_corpus(f, "jsonl") == []

    def test_duplicate_id_names_the_id(self, tmp_path):
        f = tmp_path / "c.jsonl"
        f.write_text('{"id": "x", "text": "a"}\n{"id": "x", "text": "b"}\n')
        with pytest.raises(DuplicateDocumentId, match="'x'"):
            load_corpus(f, "jsonl")

    def test_malformed_record_reports_line(self, tmp_path):
        f = tmp_path / "c.jsonl"
        f.write_text('{"id": "a", "text": "ok"}\n{not json}\n')
        with pytest.raises(CorpusFormatError, match=":2"):
            load_corpus(f, "jsonl")

    def test_missing_path(self, tmp_path):
        with pytest.raises(CorpusFormatError):
            load_corpus(tmp_path / "nope.jsonl", "jsonl")

    def test_text_directory(self, tmp_path):
        (tmp_path / "sub").mkdir()
        (tmp_path / "a.txt").write_text("primeiro")
        (tmp_path / "sub" / "b.txt").write_text("segundo")
        docs = load_corpus(tmp_path, "dir")
        assert sorted(d.id for d in docs) == ["a.txt", "sub/b.txt"]

    def test_unknown_format(self, tmp_path):
        (tmp_path / "c").write_text("")
        with pytest.raises(ValidationError):
            load_corpus(tmp_path / "c", "xml")


class TestNormalize:
    def test_hyphenation_repair_and_lowercase(self):
        assert normalize_text("ELEI-\nÇÃO", PipelineConfig()) == "eleição"

    def test_control_chars_removed(self):
        assert normalize_text("abc\x07def", PipelineConfig()) == "abcdef"

    def test_clean_string_identity(self):
        cfg = PipelineConfig(lowercase=False)
        assert normalize_text("já limpo", cfg) == "já limpo"

    def test_diacritics_optional(self):
        cfg = PipelineConfig(strip_diacritics=True)
        assert normalize_text("Eleição", cfg) == "eleicao"


class TestTokenize:
    def test_plain_sentence(self):
        assert tokenize("a mesa, o voto.") == ["a", "mesa", "o", "voto"]

    def test_empty(self):
        assert tokenize("") == []

    def test_digit_is_boundary(self):
        assert tokenize("x1y") == ["x", "y"]


class TestStandardize:
    def test_table_lookup(self):
        lex = LexiconTable({"pharmacia": "farmacia"})
        assert standardize(["pharmacia"], lex) == ["farmacia"]

    def test_absent_token_unchanged(self):
        lex = LexiconTable({"pharmacia": "farmacia"})
        assert standardize(["voto"], lex) == ["voto"]

    def test_idempotent(self):
        lex = LexiconTable({"pharmacia": "farmacia", "ph": "f"})
        toks = ["pharmacia", "ph", "outro"]
        once = standardize(toks, lex)
        assert standardize(once, lex) == once

    def test_non_idempotent_table_rejected(self):
        with pytest.raises(ValidationError):
            LexiconTable({"a": "b", "b": "c"})


class TestPreprocess:
    def test_five_stage_hand_trace(self):
        cfg = PipelineConfig(
            stopword_list={"a", "das"},
            stemmer_rules=[("ção", "c"), ("ções", "c")],
        )
        doc = Document(id="d1", raw_text="A eleição das eleições")
        out = preprocess(doc, cfg, LexiconTable.empty())
        assert out.tokens == ["eleic", "eleic"]

    def test_all_stopwords_kept_empty(self):
        cfg = PipelineConfig(stopword_list={"a", "o", "de"})
        doc = Document(id="d1", raw_text="a o de a")
        assert preprocess(doc, cfg, LexiconTable.empty()).tokens == []

    def test_noise_chunk_removed(self):
        doc = Document(id="d1", raw_text="texto xj7##q limpo")
        out = preprocess(doc, PipelineConfig(), LexiconTable.empty())
        assert out.tokens == ["texto", "limpo"]

    def test_deterministic(self):
        cfg = PipelineConfig(stopword_list={"de"}, stemmer_rules=[("s", "")])
        doc = Document(id="d1", raw_text="Votos de eleitores, CHAPAS e urnas.")
        a = preprocess(doc, cfg, LexiconTable.empty())
        b = preprocess(doc, cfg, LexiconTable.empty())
        assert a.tokens == b.tokens

    @given(st.text(max_size=200))
    def test_invariants_on_arbitrary_text(self, raw):
        cfg = PipelineConfig(stopword_list={"de", "a"})
        out = preprocess(Document(id="d", raw_text=raw), cfg, LexiconTable.empty())
        for t in out.tokens:
            assert t not in cfg.stopword_list
            assert len(t) >= cfg.min_token_len
            assert not any(c.isspace() for c in t)
            assert not any(ord(c) < 32 for c in t)
            assert not any(rule(t) for rule in cfg.noise_rules)


class TestConfigFiles:
    def test_stopword_file(self, tmp_path):
        f = tmp_path / "stop.txt"
        f.write_text("a\ndas  # artigo\n# comment line\n\no\n")
        assert load_stopwords(f) == {"a", "das", "o"}

    def test_lexicon_file(self, tmp_path):
        f = tmp_path / "lex.tsv"
        f.write_text("pharmacia\tfarmacia\nestylo\testilo\n")
        lex = load_lexicon(f)
        assert lex.entries == {"pharmacia": "farmacia", "estylo": "estilo"}

    def test_stemmer_rules_longest_first(self, tmp_path):
        f = tmp_path / "stem.tsv"
        f.write_text("s\t\nções\tc\n")
        rules = load_stemmer_rules(f)
        cfg = PipelineConfig(stemmer_rules=rules)
        assert cfg.stemmer_rules[0] == ("ções", "c")

    def test_min_token_len_validated(self):
        with pytest.raises(ValidationError):
            PipelineConfig(min_token_len=0)
