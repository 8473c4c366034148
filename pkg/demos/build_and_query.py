"""
Build an experiment from a small corpus and query it
====================================================

Walks the whole pipeline in-process: write a tiny JSONL corpus, ingest and
index it into an experiment directory, then rank documents against a
hand-picked set of query terms.
"""

import json
import tempfile
from pathlib import Path

from topicnav import engine

# a toy corpus: three documents about elections, one about schools
corpus = [
    {"id": "d1", "text": "a urna da eleição recebeu cada voto da seção"},
    {"id": "d2", "text": "o partido venceu a eleição com ampla margem de voto"},
    {"id": "d3", "text": "a mesa da seção apurou a urna ao fim do pleito"},
    {"id": "d4", "text": "a escola abriu matrícula para o ensino infantil"},
]

workdir = Path(tempfile.mkdtemp())
corpus_path = workdir / "corpus.jsonl"
corpus_path.write_text("\n".join(json.dumps(d) for d in corpus) + "\n")

# ingest normalizes, tokenizes, and persists the corpus; build adds the
# vocabulary and the TF-IDF index on top of it
exp = workdir / "exp"
engine.ingest(exp, corpus_path, "jsonl")
engine.build(exp, min_df=1, max_df_ratio=1.0)

# rank every document against the query terms by cosine similarity
result = engine.query(exp, terms=["urna", "voto", "seção"], threshold=0.0)
for hit in result.hits:
    print(f"{hit.id}  score={hit.score:.4f}  length={hit.doc_length}")

# the school document scores zero: it shares no terms with the query
assert result.hits[-1].score == 0.0
