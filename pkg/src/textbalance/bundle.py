"""Self-describing model files: TF-IDF model + classifier + provenance.

Bundles are single JSON documents with sorted keys and shortest
round-trip number encoding, so loading a bundle and re-serializing it is
byte-identical and bundles diff cleanly.  An unexpected format_version is
rejected, never migrated.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .classify import (
    DecisionTreeModel,
    LinearSvmModel,
    LogisticModel,
    MultinomialNBModel,
    TrainedClassifier,
    TreeNode,
)
from .vectorize import TfIdfModel

FORMAT_VERSION = 1


class BundleError(ValueError):
    """Raised for unreadable, corrupt, or wrong-version bundle files."""


@dataclass(frozen=True)
class PreprocessConfig:
    min_token_len: int
    stopwords_name: str
    stopwords_sha256: str

    def to_dict(self) -> dict:
        return {
            "min_token_len": self.min_token_len,
            "stopwords_name": self.stopwords_name,
            "stopwords_sha256": self.stopwords_sha256,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PreprocessConfig":
        return cls(
            min_token_len=data["min_token_len"],
            stopwords_name=data["stopwords_name"],
            stopwords_sha256=data["stopwords_sha256"],
        )


@dataclass
class ModelBundle:
    tfidf: TfIdfModel
    classifier: TrainedClassifier
    preprocess_config: PreprocessConfig
    provenance: dict
    format_version: int = FORMAT_VERSION

    def to_dict(self) -> dict:
        return {
            "format_version": self.format_version,
            "tfidf": tfidf_to_dict(self.tfidf),
            "classifier": classifier_to_dict(self.classifier),
            "preprocess_config": self.preprocess_config.to_dict(),
            "provenance": self.provenance,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ModelBundle":
        version = data.get("format_version")
        if version != FORMAT_VERSION:
            raise BundleError(
                f"unsupported bundle format_version {version!r} (expected {FORMAT_VERSION})"
            )
        try:
            return cls(
                tfidf=tfidf_from_dict(data["tfidf"]),
                classifier=classifier_from_dict(data["classifier"]),
                preprocess_config=PreprocessConfig.from_dict(data["preprocess_config"]),
                provenance=data["provenance"],
                format_version=version,
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, BundleError):
                raise
            raise BundleError(f"malformed bundle: {exc}") from exc


def canonical_json(obj) -> str:
    """Sorted keys, two-space indent, shortest-repr numbers, one trailing \\n."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def tfidf_to_dict(model: TfIdfModel) -> dict:
    return {
        "terms": list(model.terms),
        "doc_freq": list(model.doc_freq),
        "n_docs": model.n_docs,
    }


def tfidf_from_dict(data: dict) -> TfIdfModel:
    return TfIdfModel(
        terms=tuple(data["terms"]),
        doc_freq=tuple(int(v) for v in data["doc_freq"]),
        n_docs=int(data["n_docs"]),
    )


def classifier_to_dict(model: TrainedClassifier) -> dict:
    if isinstance(model, MultinomialNBModel):
        return {
            "algorithm": "nb",
            "dim": model.dim,
            "class_labels": list(model.class_labels),
            "class_log_prior": list(model.class_log_prior),
            "feature_log_prob": [list(row) for row in model.feature_log_prob],
        }
    if isinstance(model, LogisticModel):
        return {
            "algorithm": "logistic",
            "dim": model.dim,
            "weights": list(model.weights),
            "bias": model.bias,
        }
    if isinstance(model, LinearSvmModel):
        return {
            "algorithm": "svm",
            "dim": model.dim,
            "weights": list(model.weights),
            "bias": model.bias,
        }
    if isinstance(model, DecisionTreeModel):
        nodes = []
        for node in model.nodes:
            if node.is_leaf:
                nodes.append({"label": node.label})
            else:
                nodes.append(
                    {
                        "feature": node.feature,
                        "threshold": node.threshold,
                        "left": node.left,
                        "right": node.right,
                    }
                )
        return {"algorithm": "tree", "dim": model.dim, "nodes": nodes}
    raise BundleError(f"unknown classifier type {type(model).__name__}")


def classifier_from_dict(data: dict) -> TrainedClassifier:
    algorithm = data.get("algorithm")
    if algorithm == "nb":
        return MultinomialNBModel(
            dim=int(data["dim"]),
            class_labels=tuple(int(v) for v in data["class_labels"]),
            class_log_prior=tuple(float(v) for v in data["class_log_prior"]),
            feature_log_prob=tuple(
                tuple(float(v) for v in row) for row in data["feature_log_prob"]
            ),
        )
    if algorithm == "logistic":
        return LogisticModel(
            dim=int(data["dim"]),
            weights=tuple(float(v) for v in data["weights"]),
            bias=float(data["bias"]),
        )
    if algorithm == "svm":
        return LinearSvmModel(
            dim=int(data["dim"]),
            weights=tuple(float(v) for v in data["weights"]),
            bias=float(data["bias"]),
        )
    if algorithm == "tree":
        nodes = []
        for raw in data["nodes"]:
            if "label" in raw:
                nodes.append(TreeNode(label=int(raw["label"])))
            else:
                nodes.append(
                    TreeNode(
                        feature=int(raw["feature"]),
                        threshold=float(raw["threshold"]),
                        left=int(raw["left"]),
                        right=int(raw["right"]),
                    )
                )
        return DecisionTreeModel(dim=int(data["dim"]), nodes=tuple(nodes))
    raise BundleError(f"unknown classifier algorithm {algorithm!r}")


def save_bundle(bundle: ModelBundle, path) -> None:
    Path(path).write_text(canonical_json(bundle.to_dict()), encoding="utf-8")


def load_bundle(path) -> ModelBundle:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise BundleError(f"{path}: not valid JSON ({exc.msg})") from exc
    if not isinstance(data, dict):
        raise BundleError(f"{path}: bundle must be a JSON object")
    return ModelBundle.from_dict(data)
