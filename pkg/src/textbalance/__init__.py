"""Imbalanced text classification toolkit: TF-IDF features, SMOTE
oversampling, and four small from-scratch classifiers with a
with/without-oversampling comparison harness."""

from .bundle import ModelBundle, PreprocessConfig, load_bundle, save_bundle
from .classify import ALGORITHMS, TrainConfig, predict, predict_batch, train
from .evaluate import ComparisonReport, ConfusionMatrix, MetricsReport, compare, evaluate_model
from .ingest import Corpus, DatasetSplit, LabeledDocument, load_corpus, split, write_corpus
from .preprocess import filter_tokens, preprocess_corpus, preprocess_document, strip_html, tokenize
from .resample import ResampleReport, SmoteConfig, balance_training_set, knn, smote
from .rng import SplitMix64, derive_stream
from .stopwords import StopWordList, default_stopwords, load_stopwords
from .vectorize import FeatureMatrix, SparseVector, TfIdfModel, fit, transform, transform_corpus

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "ComparisonReport",
    "ConfusionMatrix",
    "Corpus",
    "DatasetSplit",
    "FeatureMatrix",
    "LabeledDocument",
    "MetricsReport",
    "ModelBundle",
    "PreprocessConfig",
    "ResampleReport",
    "SmoteConfig",
    "SparseVector",
    "SplitMix64",
    "StopWordList",
    "TfIdfModel",
    "TrainConfig",
    "__version__",
    "balance_training_set",
    "compare",
    "default_stopwords",
    "derive_stream",
    "evaluate_model",
    "filter_tokens",
    "fit",
    "knn",
    "load_bundle",
    "load_corpus",
    "load_stopwords",
    "predict",
    "predict_batch",
    "preprocess_corpus",
    "preprocess_document",
    "save_bundle",
    "smote",
    "split",
    "strip_html",
    "tokenize",
    "train",
    "transform",
    "transform_corpus",
    "write_corpus",
]
