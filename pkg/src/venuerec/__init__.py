"""Explainable venue recommendations for scientific papers.

The package trains a pipeline of tf-idf weighting, non-negative matrix
factorization for topics, and multinomial logistic regression over venues,
then serves ranked venue suggestions whose reasons are stated as topics with
their heaviest terms.
"""

from .bundle import (
    BundleChecksumError,
    BundleError,
    BundleVersionError,
    ModelBundle,
    load_bundle,
    save_bundle,
)
from .classify import (
    LogitModel,
    VenueRanking,
    fit_logit,
    most_frequent_ranking,
    predict_ranking,
    uniform_random_ranking,
)
from .corpus import (
    LabelIndex,
    PaperCorpus,
    PaperRecord,
    document_text,
    load_corpus,
    stratified_split,
)
from .evaluation import (
    MetricsReport,
    accuracy_at_k,
    evaluate,
    format_report_table,
    mean_report,
    mrr,
    write_reports_json,
)
from .features import FeatureSpec, featurize, featurize_corpus
from .nmf import NmfConfig, NmfModel, fit_nmf, reconstruction_error, top_terms, transform
from .pipeline import RunConfig, config_hash, evaluate_methods, train_bundle
from .recommend import (
    Explanation,
    Recommendation,
    build_venue_profiles,
    explain,
    recommend,
)
from .text import (
    SparseVector,
    TfidfModel,
    Vocabulary,
    build_vocabulary,
    fit_tfidf,
    tokenize,
    vectorize,
)

__version__ = "0.1.0"

__all__ = [
    "BundleChecksumError",
    "BundleError",
    "BundleVersionError",
    "Explanation",
    "FeatureSpec",
    "LabelIndex",
    "LogitModel",
    "MetricsReport",
    "ModelBundle",
    "NmfConfig",
    "NmfModel",
    "PaperCorpus",
    "PaperRecord",
    "Recommendation",
    "RunConfig",
    "SparseVector",
    "TfidfModel",
    "VenueRanking",
    "Vocabulary",
    "accuracy_at_k",
    "build_venue_profiles",
    "build_vocabulary",
    "config_hash",
    "document_text",
    "evaluate",
    "evaluate_methods",
    "format_report_table",
    "explain",
    "featurize",
    "featurize_corpus",
    "fit_logit",
    "fit_nmf",
    "fit_tfidf",
    "load_bundle",
    "load_corpus",
    "most_frequent_ranking",
    "mean_report",
    "mrr",
    "predict_ranking",
    "recommend",
    "reconstruction_error",
    "save_bundle",
    "stratified_split",
    "tokenize",
    "top_terms",
    "train_bundle",
    "write_reports_json",
    "transform",
    "uniform_random_ranking",
    "vectorize",
]
