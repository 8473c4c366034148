"""Engine error hierarchy with machine-readable codes shared by CLI and service."""


class TopicNavError(Exception):
    """Base class; `code` is the stable machine-readable identifier."""

    code = "ENGINE_ERROR"


class ValidationError(TopicNavError):
    code = "VALIDATION"


class CorpusFormatError(TopicNavError):
    code = "CORPUS_FORMAT"


class DuplicateDocumentId(CorpusFormatError):
    code = "DUPLICATE_DOC_ID"


class EmptyCorpusError(TopicNavError):
    code = "EMPTY_CORPUS"


class AllTermsUnknown(TopicNavError):
    """Raised when no query term is present in the index vocabulary."""

    code = "ALL_TERMS_UNKNOWN"


class SeedNeverCovered(TopicNavError):
    """Escalation exhausted without every seed reaching a relevant topic weight."""

    code = "SEED_NEVER_COVERED"

    def __init__(self, seeds, n_max):
        self.seeds = list(seeds)
        self.n_max = n_max
        super().__init__(
            f"seeds never covered after escalating to n={n_max}: {', '.join(self.seeds)}"
        )


class UndefinedMetric(TopicNavError):
    code = "UNDEFINED_METRIC"


class StoreError(TopicNavError):
    code = "STORE_ERROR"


class ArtifactMissing(StoreError):
    code = "ARTIFACT_MISSING"


class ArtifactCorrupt(StoreError):
    code = "ARTIFACT_CORRUPT"


class ExperimentLocked(StoreError):
    code = "BUILD_IN_PROGRESS"
