"""topicnav: seed-guided topic navigation over noisy OCR text corpora.

Pipeline: preprocessing -> TF-IDF term-document index -> fragmented LDA
(collapsed Gibbs) -> induced-topic signatures -> cosine retrieval, with
an evaluation harness, persisted experiment directories, a CLI, and an
HTTP service.
"""

from .errors import (
    AllTermsUnknown,
    ArtifactCorrupt,
    ArtifactMissing,
    EmptyCorpusError,
    SeedNeverCovered,
    TopicNavError,
    UndefinedMetric,
    ValidationError,
)
from .evaluation import ConfusionMatrix, GroundTruth, confusion, precision, top_k_precision
from .induction import InducedTopic, SeedSpec, build_signatures, check_seed_coverage, induce_topics, label_topics
from .lda import LdaConfig, LdaModel, fit_lda, top_words, word_weight
from .pipeline import Document, LexiconTable, PipelineConfig, load_corpus, normalize_text, preprocess, standardize, tokenize
from .retrieval import RetrievalResult, TopicalQuery, retrieve, signature_to_query_vector
from .vectorspace import SparseVector, TermDocumentIndex, Vocabulary, build_index, build_vocabulary, cosine, tfidf_weight

__version__ = "0.1.0"
