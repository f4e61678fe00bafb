"""Topic modelling of dated policy statements.

Statements are normalized into token lists, turned into bag-of-words and
tf-idf matrices, and fitted with collapsed-Gibbs LDA whose hyperparameters
are chosen by C_v coherence. Fitted models feed topic-dominance series, a
2-D topic map and top-word tables.
"""
from .coherence import CoherenceConfig, CoherenceScore, cv_score, sliding_window_counts
from .corpus import Corpus, Document, RawDocument, fetch_statements, load_corpus, strip_markup
from .errors import FedTopicsError, StageError
from .hyperopt import GridSpec, enumerate_grid, sample_configs, search, select_best
from .indicators import TaylorRuleParams, extreme_summary, taylor_rate
from .lda import LdaHyperparams, LdaModel, fit, infer_theta, load_model, save_model, top_words
from .pipeline import RunConfig, run
from .porter import porter_stem
from .preprocess import PreprocessConfig, TokenizedDocument, normalize, normalize_corpus
from .trends import dominance_series, dominant_periods, mds_embed, wordcloud_data, write_report
from .vectorize import DocTermMatrix, bow_matrix, build_dictionary, tfidf_transform

__version__ = "0.1.0"

__all__ = [
    "CoherenceConfig", "CoherenceScore", "cv_score", "sliding_window_counts",
    "Corpus", "Document", "RawDocument", "fetch_statements", "load_corpus", "strip_markup",
    "FedTopicsError", "StageError",
    "GridSpec", "enumerate_grid", "sample_configs", "search", "select_best",
    "TaylorRuleParams", "extreme_summary", "taylor_rate",
    "LdaHyperparams", "LdaModel", "fit", "infer_theta", "load_model", "save_model", "top_words",
    "RunConfig", "run",
    "porter_stem",
    "PreprocessConfig", "TokenizedDocument", "normalize", "normalize_corpus",
    "dominance_series", "dominant_periods", "mds_embed", "wordcloud_data", "write_report",
    "DocTermMatrix", "bow_matrix", "build_dictionary", "tfidf_transform",
]
