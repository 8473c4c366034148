"""Versioned experiment directories.

Layout: manifest.json, corpus.tokens (JSONL), vocab.tsv, index.bin,
lda.bin + lda.meta.json, topics.json, eval/*.json. The manifest records
a sha256 per file plus the config that produced each artifact, so
verify() can detect corruption and stale dependency chains.
"""

from __future__ import annotations

import contextlib
import dataclasses
import hashlib
import json
import os
import struct
from datetime import date
from pathlib import Path
from typing import Any

import numpy as np

from .errors import ArtifactCorrupt, ArtifactMissing, ExperimentLocked, StoreError
from .lda import LdaConfig, LdaModel
from .pipeline import Document
from .vectorspace import SparseVector, TermDocumentIndex, Vocabulary

MANIFEST_VERSION = 1
_INDEX_MAGIC = b"TNAVIDX1"
_LDA_MAGIC = b"TNAVLDA1"
_BIN_VERSION = 1

_KIND_FILES = {
    "corpus": ["corpus.tokens"],
    "vocab": ["vocab.tsv"],
    "index": ["index.bin"],
    "lda": ["lda.bin", "lda.meta.json"],
    "topics": ["topics.json"],
}


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


@contextlib.contextmanager
def experiment_lock(root: str | Path):
    """One writer per experiment directory; readers never take the lock."""
    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    lock_path = root / ".lock"
    try:
        fd = os.open(lock_path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
    except FileExistsError:
        raise ExperimentLocked(f"experiment is locked by another build: {root}")
    try:
        os.write(fd, str(os.getpid()).encode())
        os.close(fd)
        yield
    finally:
        with contextlib.suppress(FileNotFoundError):
            os.unlink(lock_path)


def _load_manifest(root: Path) -> dict:
    path = root / "manifest.json"
    if not path.exists():
        raise ArtifactMissing(f"no manifest.json in {root}")
    manifest = json.loads(path.read_text(encoding="utf-8"))
    if manifest.get("version") != MANIFEST_VERSION:
        raise StoreError(
            f"manifest version {manifest.get('version')} != {MANIFEST_VERSION}"
        )
    return manifest


def _save_manifest(root: Path, manifest: dict):
    tmp = root / "manifest.json.tmp"
    tmp.write_text(json.dumps(manifest, indent=2, ensure_ascii=False), encoding="utf-8")
    tmp.replace(root / "manifest.json")


def _manifest_or_empty(root: Path) -> dict:
    if (root / "manifest.json").exists():
        return _load_manifest(root)
    return {"version": MANIFEST_VERSION, "artifacts": {}}


def save_artifact(
    root: str | Path,
    kind: str,
    payload: Any,
    config: dict | None = None,
    depends_on: list[str] | None = None,
) -> dict:
    """Write the artifact files for `kind` and record them in the manifest.

    Returns the manifest entry. Eval reports use kind "eval/<name>".
    """
    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    if kind == "corpus":
        files = [_write_corpus(root, payload)]
    elif kind == "vocab":
        files = [_write_vocab(root, payload)]
    elif kind == "index":
        files = [_write_index(root, payload)]
        depends_on = depends_on or ["corpus", "vocab"]
    elif kind == "lda":
        files = _write_lda(root, payload)
        depends_on = depends_on or ["index"]
    elif kind == "topics":
        files = [_write_json(root, "topics.json", payload)]
        depends_on = depends_on or ["lda"]
    elif kind.startswith("eval/"):
        name = kind.split("/", 1)[1]
        (root / "eval").mkdir(exist_ok=True)
        files = [_write_json(root, f"eval/{name}.json", payload)]
        depends_on = depends_on or ["index"]
    else:
        raise StoreError(f"unknown artifact kind: {kind!r}")
    entry = {
        "files": [{"name": f, "sha256": _sha256(root / f)} for f in files],
        "config": config or {},
        "depends_on": depends_on or [],
    }
    manifest = _manifest_or_empty(root)
    manifest["artifacts"][kind] = entry
    _save_manifest(root, manifest)
    return entry


def load_artifact(root: str | Path, kind: str, verify_hash: bool = True) -> Any:
    root = Path(root)
    manifest = _load_manifest(root)
    entry = manifest["artifacts"].get(kind)
    if entry is None:
        raise ArtifactMissing(f"artifact {kind!r} not in manifest of {root}")
    for f in entry["files"]:
        path = root / f["name"]
        if not path.exists():
            raise ArtifactMissing(f"file missing for artifact {kind!r}: {f['name']}")
        if verify_hash and _sha256(path) != f["sha256"]:
            raise ArtifactCorrupt(f"hash mismatch for {f['name']} (artifact {kind!r})")
    if kind == "corpus":
        return _read_corpus(root)
    if kind == "vocab":
        return _read_vocab(root)
    if kind == "index":
        return _read_index(root, _read_vocab(root))
    if kind == "lda":
        return _read_lda(root)
    if kind == "topics":
        return json.loads((root / "topics.json").read_text(encoding="utf-8"))
    if kind.startswith("eval/"):
        name = kind.split("/", 1)[1]
        return json.loads((root / "eval" / f"{name}.json").read_text(encoding="utf-8"))
    raise StoreError(f"unknown artifact kind: {kind!r}")


def verify(root: str | Path) -> dict:
    """Recompute every hash; side-effect-free. Returns {kind: 'ok'|problem}."""
    root = Path(root)
    manifest = _load_manifest(root)
    report: dict[str, str] = {}
    for kind, entry in manifest["artifacts"].items():
        problems = []
        for f in entry["files"]:
            path = root / f["name"]
            if not path.exists():
                problems.append(f"missing {f['name']}")
            elif _sha256(path) != f["sha256"]:
                problems.append(f"corrupt {f['name']}")
        for dep in entry.get("depends_on", []):
            if dep not in manifest["artifacts"]:
                problems.append(f"missing dependency {dep}")
        report[kind] = "ok" if not problems else "; ".join(problems)
    return report


def artifact_exists(root: str | Path, kind: str) -> bool:
    root = Path(root)
    if not (root / "manifest.json").exists():
        return False
    return kind in _manifest_or_empty(root)["artifacts"]


# --- corpus ---------------------------------------------------------------

def _write_corpus(root: Path, docs: list[Document]) -> str:
    tmp = root / "corpus.tokens.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        for d in docs:
            fh.write(json.dumps({
                "id": d.id,
                "date": d.date.isoformat() if d.date else None,
                "raw_text": d.raw_text,
                "tokens": d.tokens,
            }, ensure_ascii=False) + "\n")
    tmp.replace(root / "corpus.tokens")
    return "corpus.tokens"


def _read_corpus(root: Path) -> list[Document]:
    docs = []
    with open(root / "corpus.tokens", encoding="utf-8") as fh:
        for line in fh:
            rec = json.loads(line)
            docs.append(Document(
                id=rec["id"],
                raw_text=rec["raw_text"],
                date=date.fromisoformat(rec["date"]) if rec["date"] else None,
                tokens=rec["tokens"],
            ))
    return docs


# --- vocabulary -----------------------------------------------------------

def _write_vocab(root: Path, vocab: Vocabulary) -> str:
    tmp = root / "vocab.tsv.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        for term, df in zip(vocab.terms, vocab.df.tolist()):
            fh.write(f"{term}\t{df}\n")
    tmp.replace(root / "vocab.tsv")
    return "vocab.tsv"


def _read_vocab(root: Path) -> Vocabulary:
    terms, dfs = [], []
    with open(root / "vocab.tsv", encoding="utf-8") as fh:
        for line in fh:
            term, df = line.rstrip("\n").split("\t")
            terms.append(term)
            dfs.append(int(df))
    return Vocabulary(
        terms=terms,
        index={t: i for i, t in enumerate(terms)},
        df=np.array(dfs, dtype=np.int64),
    )


# --- index ----------------------------------------------------------------

def _write_index(root: Path, index: TermDocumentIndex) -> str:
    tmp = root / "index.bin.tmp"
    with open(tmp, "wb") as fh:
        fh.write(_INDEX_MAGIC)
        fh.write(struct.pack("<III", _BIN_VERSION, index.n_docs, len(index.vocabulary)))
        for doc_id, vec in index.doc_vectors.items():
            id_bytes = doc_id.encode("utf-8")
            fh.write(struct.pack("<III", len(id_bytes), index.doc_lengths[doc_id], vec.nnz))
            fh.write(id_bytes)
            fh.write(vec.indices.astype("<u4").tobytes())
            fh.write(vec.values.astype("<f8").tobytes())
    tmp.replace(root / "index.bin")
    return "index.bin"


def _read_index(root: Path, vocab: Vocabulary) -> TermDocumentIndex:
    with open(root / "index.bin", "rb") as fh:
        magic = fh.read(8)
        if magic != _INDEX_MAGIC:
            raise ArtifactCorrupt("index.bin: bad magic")
        version, n_docs, vocab_size = struct.unpack("<III", fh.read(12))
        if version != _BIN_VERSION:
            raise StoreError(f"index.bin version {version} unsupported")
        if vocab_size != len(vocab):
            raise ArtifactCorrupt("index.bin vocabulary size mismatch with vocab.tsv")
        doc_vectors: dict[str, SparseVector] = {}
        doc_lengths: dict[str, int] = {}
        for _ in range(n_docs):
            id_len, doc_len, nnz = struct.unpack("<III", fh.read(12))
            doc_id = fh.read(id_len).decode("utf-8")
            idx = np.frombuffer(fh.read(4 * nnz), dtype="<u4").astype(np.int64)
            val = np.frombuffer(fh.read(8 * nnz), dtype="<f8").astype(np.float64)
            doc_vectors[doc_id] = SparseVector(indices=idx, values=val)
            doc_lengths[doc_id] = doc_len
    return TermDocumentIndex(
        vocabulary=vocab, doc_vectors=doc_vectors, doc_lengths=doc_lengths, n_docs=n_docs
    )


# --- LDA model ------------------------------------------------------------

def _write_lda(root: Path, model: LdaModel) -> list[str]:
    tmp = root / "lda.bin.tmp"
    m, v = model.topic_word.shape
    with open(tmp, "wb") as fh:
        fh.write(_LDA_MAGIC)
        fh.write(struct.pack("<III", _BIN_VERSION, m, v))
        fh.write(model.topic_word.astype("<f8").tobytes(order="C"))
    tmp.replace(root / "lda.bin")
    meta = {
        "config": dataclasses.asdict(model.config),
        "log_likelihood_trace": model.log_likelihood_trace,
        "count_trace": model.count_trace,
    }
    _write_json(root, "lda.meta.json", meta)
    return ["lda.bin", "lda.meta.json"]


def _read_lda(root: Path) -> LdaModel:
    with open(root / "lda.bin", "rb") as fh:
        magic = fh.read(8)
        if magic != _LDA_MAGIC:
            raise ArtifactCorrupt("lda.bin: bad magic")
        version, m, v = struct.unpack("<III", fh.read(12))
        if version != _BIN_VERSION:
            raise StoreError(f"lda.bin version {version} unsupported")
        topic_word = np.frombuffer(fh.read(8 * m * v), dtype="<f8").astype(
            np.float64
        ).reshape(m, v)
    meta = json.loads((root / "lda.meta.json").read_text(encoding="utf-8"))
    return LdaModel(
        topic_word=topic_word,
        config=LdaConfig(**meta["config"]),
        vocab_size=v,
        log_likelihood_trace=meta["log_likelihood_trace"],
        count_trace=meta["count_trace"],
    )


def _write_json(root: Path, rel_name: str, payload: Any) -> str:
    tmp = root / (rel_name + ".tmp")
    tmp.write_text(
        json.dumps(payload, indent=2, ensure_ascii=False), encoding="utf-8"
    )
    tmp.replace(root / rel_name)
    return rel_name
