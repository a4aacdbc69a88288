from .corpus import (
    DEFAULT_CORPUS_VERSION,
    EXTENSION_ENTRIES,
    REQUIRED_ENTRIES,
    Corpus,
    CorpusEntry,
    default_corpus,
    load_corpus,
)
from .registry import (
    REGISTRY,
    TheoremVerdict,
    UnknownTheoremError,
    VerificationSummary,
    VerifyContext,
    recheck,
    theorem_ids,
    verify,
    verify_all,
)

__all__ = [name for name in dir() if not name.startswith("_")]
