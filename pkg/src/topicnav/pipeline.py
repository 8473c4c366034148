"""Corpus loading and text preprocessing.

Raw OCR text goes through: normalization (hyphenation repair, control
characters, case, optional diacritics), chunk-level noise screening,
letter-boundary tokenization, stopword/length filtering, lexical
standardization against a variant->canonical table, and rule-driven
suffix stemming.
"""

from __future__ import annotations

import json
import re
import unicodedata
from dataclasses import dataclass, field, replace
from datetime import date
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .errors import CorpusFormatError, DuplicateDocumentId, ValidationError

# trailing hyphen followed by a line break: "frag-\nment" -> "fragment"
_HYPHEN_BREAK = re.compile(r"-[ \t]*\r?\n[ \t]*")
_LETTER_RUN = re.compile(r"[^\W\d_]+", re.UNICODE)
_EDGE_PUNCT = ".,;:!?()[]{}\"'«»<>|/\\-–—_"


@dataclass
class Document:
    id: str
    raw_text: str
    date: date | None = None
    tokens: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class LexiconTable:
    """Variant-spelling to canonical-spelling map; idempotent by construction."""

    entries: dict[str, str]

    def __post_init__(self):
        for variant, canonical in self.entries.items():
            mapped = self.entries.get(canonical)
            if mapped is not None and mapped != canonical:
                raise ValidationError(
                    f"lexicon not idempotent: {variant!r} -> {canonical!r} -> {mapped!r}"
                )

    @classmethod
    def empty(cls) -> "LexiconTable":
        return cls(entries={})


def _too_few_letters(chunk: str) -> bool:
    return sum(c.isalpha() for c in chunk) < 2


def _short_digit_letter_mix(chunk: str) -> bool:
    return (
        len(chunk) < 5
        and any(c.isdigit() for c in chunk)
        and any(c.isalpha() for c in chunk)
    )


def _embedded_symbols(chunk: str) -> bool:
    core = chunk.strip(_EDGE_PUNCT)
    return any(not (c.isalnum() or c in "-'") for c in core)


def default_noise_rules() -> list[Callable[[str], bool]]:
    """OCR-junk predicates: near-empty chunks, short digit/letter mixes,
    and symbols embedded inside a word."""
    return [_too_few_letters, _short_digit_letter_mix, _embedded_symbols]


@dataclass
class PipelineConfig:
    stopword_list: frozenset[str] = frozenset()
    min_token_len: int = 2
    noise_rules: list[Callable[[str], bool]] = field(default_factory=default_noise_rules)
    stemmer_rules: list[tuple[str, str]] = field(default_factory=list)
    lowercase: bool = True
    strip_diacritics: bool = False

    def __post_init__(self):
        if self.min_token_len < 1:
            raise ValidationError("min_token_len must be >= 1")
        # longest suffix first so e.g. "ções" wins over "es"
        self.stemmer_rules = sorted(
            self.stemmer_rules, key=lambda r: -len(r[0])
        )
        self.stopword_list = frozenset(self.stopword_list)


def normalize_text(raw: str, config: PipelineConfig) -> str:
    """Repair hyphenated line breaks, drop control characters, apply case
    and diacritic options. Total function: never raises."""
    text = _HYPHEN_BREAK.sub("", raw)
    out = []
    for c in text:
        if c in "\n\r\t":
            out.append(" ")
        elif unicodedata.category(c) == "Cc":
            continue
        else:
            out.append(c)
    text = "".join(out)
    if config.lowercase:
        text = text.lower()
    if config.strip_diacritics:
        text = "".join(
            c for c in unicodedata.normalize("NFKD", text)
            if not unicodedata.combining(c)
        )
    return text


def tokenize(text: str) -> list[str]:
    """Maximal runs of letters, in order; digits and symbols are boundaries."""
    return _LETTER_RUN.findall(text)


def standardize(tokens: Sequence[str], lexicon: LexiconTable) -> list[str]:
    return [lexicon.entries.get(t, t) for t in tokens]


def stem(tokens: Sequence[str], rules: Sequence[tuple[str, str]]) -> list[str]:
    """Apply the first (longest) matching suffix rule to each token."""
    out = []
    for t in tokens:
        for suffix, repl in rules:
            if t.endswith(suffix) and len(t) > len(suffix):
                t = t[: -len(suffix)] + repl
                break
        out.append(t)
    return out


def _is_noise(chunk: str, rules: Iterable[Callable[[str], bool]]) -> bool:
    return any(rule(chunk) for rule in rules)


def preprocess(
    doc: Document, config: PipelineConfig, lexicon: LexiconTable
) -> Document:
    """Full chain; deterministic, returns a new Document with tokens filled.

    Noise predicates are applied to whitespace chunks before letter-run
    tokenization (a chunk like "xj7##q" carries the digit/symbol evidence
    that individual letter runs no longer have) and again to the final
    tokens, so no output token matches a rule.
    """
    text = normalize_text(doc.raw_text, config)
    chunks = [c for c in text.split() if not _is_noise(c, config.noise_rules)]
    tokens = tokenize(" ".join(chunks))
    tokens = [
        t
        for t in tokens
        if t not in config.stopword_list
        and len(t) >= config.min_token_len
        and not _is_noise(t, config.noise_rules)
    ]
    tokens = standardize(tokens, lexicon)
    tokens = stem(tokens, config.stemmer_rules)
    # stemming can shorten a token into a stopword or below min length;
    # re-filter so the output invariants hold unconditionally
    tokens = [
        t
        for t in tokens
        if t not in config.stopword_list and len(t) >= config.min_token_len
    ]
    return replace(doc, tokens=tokens)


def load_corpus(path: str | Path, format: str) -> list[Document]:
    """Load raw documents; tokens are left empty for preprocess() to fill.

    Formats: "jsonl" (one object per line: id, text, optional ISO date)
    and "dir" (every *.txt under path is a document, id = relative path).
    """
    path = Path(path)
    if not path.exists():
        raise CorpusFormatError(f"corpus path does not exist: {path}")
    if format == "jsonl":
        docs = _load_jsonl(path)
    elif format in ("dir", "text-directory"):
        docs = _load_text_dir(path)
    else:
        raise ValidationError(f"unknown corpus format: {format!r}")
    seen: set[str] = set()
    for d in docs:
        if d.id in seen:
            raise DuplicateDocumentId(f"duplicate document id: {d.id!r}")
        seen.add(d.id)
    return docs


def _load_jsonl(path: Path) -> list[Document]:
    docs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as e:
                raise CorpusFormatError(f"{path}:{lineno}: invalid JSON: {e}") from e
            if not isinstance(rec, dict) or "id" not in rec or "text" not in rec:
                raise CorpusFormatError(
                    f"{path}:{lineno}: record must have 'id' and 'text' fields"
                )
            doc_date = None
            if rec.get("date"):
                try:
                    doc_date = date.fromisoformat(rec["date"])
                except ValueError as e:
                    raise CorpusFormatError(f"{path}:{lineno}: bad date: {e}") from e
            docs.append(Document(id=str(rec["id"]), raw_text=rec["text"], date=doc_date))
    return docs


def _load_text_dir(path: Path) -> list[Document]:
    if not path.is_dir():
        raise CorpusFormatError(f"not a directory: {path}")
    docs = []
    for f in sorted(path.rglob("*.txt")):
        docs.append(
            Document(id=str(f.relative_to(path)), raw_text=f.read_text(encoding="utf-8"))
        )
    return docs


def load_stopwords(path: str | Path) -> frozenset[str]:
    """One term per line, '#' starts a comment."""
    terms = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        term = line.split("#", 1)[0].strip()
        if term:
            terms.add(term)
    return frozenset(terms)


def load_lexicon(path: str | Path) -> LexiconTable:
    """TSV: variant<TAB>canonical."""
    entries = {}
    for lineno, line in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise CorpusFormatError(f"{path}:{lineno}: expected variant<TAB>canonical")
        entries[parts[0].strip()] = parts[1].strip()
    return LexiconTable(entries=entries)


def load_stemmer_rules(path: str | Path) -> list[tuple[str, str]]:
    """One rule per line: suffix<TAB>replacement (replacement may be empty)."""
    rules = []
    for lineno, line in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) not in (1, 2):
            raise CorpusFormatError(f"{path}:{lineno}: expected suffix<TAB>replacement")
        suffix = parts[0].strip()
        repl = parts[1].strip() if len(parts) == 2 else ""
        if not suffix:
            raise CorpusFormatError(f"{path}:{lineno}: empty suffix")
        rules.append((suffix, repl))
    return rules
