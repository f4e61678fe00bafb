"""Exception hierarchy shared by every stage of the engine."""


class FedTopicsError(Exception):
    """Base class for all errors raised by fedtopics."""


# corpus
class MissingField(FedTopicsError):
    pass


class UnparseableDate(FedTopicsError):
    pass


class DuplicateId(FedTopicsError):
    pass


class EmptyCorpus(FedTopicsError):
    pass


class NetworkError(FedTopicsError):
    def __init__(self, url, reason):
        super().__init__(f"{url}: {reason}")
        self.url = url
        self.reason = reason


# vectorize
class EmptyVocabulary(FedTopicsError):
    pass


class EmptyDocumentRow(FedTopicsError):
    def __init__(self, doc_id):
        super().__init__(f"document {doc_id!r} has no terms left in the dictionary")
        self.doc_id = doc_id


# lda
class InvalidHyperparams(FedTopicsError):
    pass


class EmptyMatrix(FedTopicsError):
    pass


class UnknownVocabularyOnly(FedTopicsError):
    pass


class IndexOutOfRange(FedTopicsError, IndexError):
    pass


# coherence
class UnknownWord(FedTopicsError, KeyError):
    pass


class WordNotInCorpus(FedTopicsError, KeyError):
    pass


# hyperopt
class InvalidRange(FedTopicsError, ValueError):
    pass


class SampleTooLarge(FedTopicsError, ValueError):
    pass


class AllConfigsFailed(FedTopicsError):
    pass


# trends
class FingerprintMismatch(FedTopicsError):
    pass


class DimensionMismatch(FedTopicsError, ValueError):
    pass


# indicators
class NonPositiveCoefficient(FedTopicsError, ValueError):
    pass


class EmptyWindow(FedTopicsError):
    def __init__(self, name):
        super().__init__(f"series {name!r} has no observation inside the window")
        self.name = name


class StageError(FedTopicsError):
    """A pipeline failure tagged with the stage that raised it."""

    def __init__(self, stage, cause):
        super().__init__(f"[{stage}] {type(cause).__name__}: {cause}")
        self.stage = stage
        self.cause = cause
