"""Four supervised classifiers over TF-IDF feature matrices.

All four are trained from scratch on dense views of the sparse input:
multinomial naive Bayes with Laplace smoothing (fractional feature mass
is allowed), full-batch gradient-descent logistic regression, a primal
linear SVM with the Pegasos step schedule, and a greedy Gini CART tree.
Training is deterministic: same matrix and config, same model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .vectorize import FeatureMatrix, SparseVector

ALGORITHMS = ("nb", "logistic", "svm", "tree")

ALGORITHM_TITLES = {
    "nb": "Multinomial NB",
    "logistic": "Logistic Regression",
    "svm": "Linear SVM",
    "tree": "Decision Tree",
}


@dataclass(frozen=True)
class TrainConfig:
    algorithm: str
    seed: int = 0
    lr_learning_rate: float = 0.1
    lr_epochs: int = 300
    l2: float = 1e-4
    svm_C: float = 1.0
    svm_epochs: int = 300
    nb_alpha: float = 1.0
    tree_max_depth: int = 10
    tree_min_samples_split: int = 2
    tree_max_features: int | None = None

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(
                f"unknown algorithm {self.algorithm!r} (expected one of {ALGORITHMS})"
            )
        positives = {
            "lr_learning_rate": self.lr_learning_rate,
            "lr_epochs": self.lr_epochs,
            "svm_C": self.svm_C,
            "svm_epochs": self.svm_epochs,
            "nb_alpha": self.nb_alpha,
            "tree_max_depth": self.tree_max_depth,
        }
        for name, value in positives.items():
            if value <= 0:
                raise ValueError(f"{name} must be positive, got {value}")
        if self.l2 < 0:
            raise ValueError(f"l2 must be non-negative, got {self.l2}")
        if self.tree_min_samples_split < 2:
            raise ValueError(
                f"tree_min_samples_split must be >= 2, got {self.tree_min_samples_split}"
            )
        if self.tree_max_features is not None and self.tree_max_features < 1:
            raise ValueError("tree_max_features must be >= 1 when set")

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "seed": self.seed,
            "lr_learning_rate": self.lr_learning_rate,
            "lr_epochs": self.lr_epochs,
            "l2": self.l2,
            "svm_C": self.svm_C,
            "svm_epochs": self.svm_epochs,
            "nb_alpha": self.nb_alpha,
            "tree_max_depth": self.tree_max_depth,
            "tree_min_samples_split": self.tree_min_samples_split,
            "tree_max_features": self.tree_max_features,
        }


@dataclass(frozen=True)
class MultinomialNBModel:
    dim: int
    class_labels: tuple[int, ...]
    class_log_prior: tuple[float, ...]
    feature_log_prob: tuple[tuple[float, ...], ...]

    def decision_score(self, vector: SparseVector) -> float | None:
        """Log-posterior difference (class 1 minus class 0), if both present."""
        if self.class_labels != (0, 1):
            return None
        scores = _nb_scores(self, vector)
        return scores[1] - scores[0]


@dataclass(frozen=True)
class LogisticModel:
    dim: int
    weights: tuple[float, ...]
    bias: float

    def decision_score(self, vector: SparseVector) -> float:
        return _sparse_dot(vector, self.weights) + self.bias


@dataclass(frozen=True)
class LinearSvmModel:
    dim: int
    weights: tuple[float, ...]
    bias: float

    def decision_score(self, vector: SparseVector) -> float:
        return _sparse_dot(vector, self.weights) + self.bias


@dataclass(frozen=True)
class TreeNode:
    """Internal node (feature/threshold/children) or leaf (label set)."""

    feature: int = -1
    threshold: float = 0.0
    left: int = -1
    right: int = -1
    label: int | None = None

    @property
    def is_leaf(self) -> bool:
        return self.label is not None


@dataclass(frozen=True)
class DecisionTreeModel:
    dim: int
    nodes: tuple[TreeNode, ...]

    def decision_score(self, vector: SparseVector) -> None:
        return None


TrainedClassifier = MultinomialNBModel | LogisticModel | LinearSvmModel | DecisionTreeModel


def _require_non_empty(matrix: FeatureMatrix) -> None:
    if len(matrix) == 0:
        raise ValueError("cannot train on an empty matrix")
    if matrix.dim == 0:
        raise ValueError("cannot train on a dimension-0 matrix")


def _require_both_classes(matrix: FeatureMatrix, algorithm: str) -> None:
    if len(set(matrix.labels)) < 2:
        raise ValueError(f"{algorithm} requires both classes in the training data")


def _sparse_dot(vector: SparseVector, weights: tuple[float, ...]) -> float:
    return sum(v * weights[i] for i, v in vector.entries)


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def logistic_loss_and_grad(
    weights: np.ndarray, bias: float, X: np.ndarray, y: np.ndarray, l2: float
) -> tuple[float, np.ndarray, float]:
    """Mean L2-regularized log loss and its analytic gradient.

    loss = mean(log(1 + e^z) - y*z) + l2/2 * ||w||^2, z = Xw + b.
    The bias is not regularized.
    """
    z = X @ weights + bias
    loss = float(np.mean(np.logaddexp(0.0, z) - y * z)) + 0.5 * l2 * float(weights @ weights)
    p = _sigmoid(z)
    grad_w = X.T @ (p - y) / len(y) + l2 * weights
    grad_b = float(np.mean(p - y))
    return loss, grad_w, grad_b


def _fit_logistic(matrix: FeatureMatrix, config: TrainConfig) -> LogisticModel:
    X = matrix.to_dense()
    y = matrix.labels_array().astype(np.float64)
    w = np.zeros(matrix.dim)
    b = 0.0
    for _ in range(config.lr_epochs):
        _, grad_w, grad_b = logistic_loss_and_grad(w, b, X, y, config.l2)
        w -= config.lr_learning_rate * grad_w
        b -= config.lr_learning_rate * grad_b
    return LogisticModel(dim=matrix.dim, weights=tuple(float(v) for v in w), bias=float(b))


def svm_objective(weights: np.ndarray, X_aug: np.ndarray, y_pm: np.ndarray, lam: float) -> float:
    """Primal objective: lam/2 * ||w||^2 + mean hinge loss."""
    margins = y_pm * (X_aug @ weights)
    hinge = np.maximum(0.0, 1.0 - margins)
    return 0.5 * lam * float(weights @ weights) + float(np.mean(hinge))


def _fit_svm(
    matrix: FeatureMatrix, config: TrainConfig
) -> tuple[LinearSvmModel, list[float]]:
    """Full-batch Pegasos on an augmented (regularized) bias feature.

    Step t uses eta = 1/(lam*t) with lam = 1/(C*n), followed by the
    Pegasos projection onto the ball of radius 1/sqrt(lam).
    """
    n = len(matrix)
    X = matrix.to_dense()
    X_aug = np.hstack([X, np.ones((n, 1))])
    y_pm = 2.0 * matrix.labels_array().astype(np.float64) - 1.0
    lam = 1.0 / (config.svm_C * n)
    w = np.zeros(matrix.dim + 1)
    radius = 1.0 / math.sqrt(lam)
    objectives: list[float] = []
    for t in range(1, config.svm_epochs + 1):
        objectives.append(svm_objective(w, X_aug, y_pm, lam))
        margins = y_pm * (X_aug @ w)
        violators = margins < 1.0
        grad = lam * w - (X_aug[violators] * y_pm[violators, None]).sum(axis=0) / n
        w -= (1.0 / (lam * t)) * grad
        norm = float(np.linalg.norm(w))
        if norm > radius:
            w *= radius / norm
    model = LinearSvmModel(
        dim=matrix.dim,
        weights=tuple(float(v) for v in w[:-1]),
        bias=float(w[-1]),
    )
    return model, objectives


def svm_training_objectives(matrix: FeatureMatrix, config: TrainConfig) -> list[float]:
    """Per-epoch primal objective values (diagnostic; same run as train)."""
    _require_non_empty(matrix)
    _require_both_classes(matrix, "svm")
    _, objectives = _fit_svm(matrix, config)
    return objectives


def _fit_nb(matrix: FeatureMatrix, config: TrainConfig) -> MultinomialNBModel:
    labels = sorted(set(matrix.labels))
    X = matrix.to_dense()
    if X.min(initial=0.0) < 0.0:
        raise ValueError(
            "nb requires non-negative feature values (multinomial counts)"
        )
    y = matrix.labels_array()
    alpha = config.nb_alpha
    priors = []
    log_probs = []
    for label in labels:
        mask = y == label
        count = int(mask.sum())
        priors.append(math.log(count / len(matrix)))
        mass = X[mask].sum(axis=0)
        denom = float(mass.sum()) + alpha * matrix.dim
        log_probs.append(tuple(float(math.log((m + alpha) / denom)) for m in mass))
    return MultinomialNBModel(
        dim=matrix.dim,
        class_labels=tuple(labels),
        class_log_prior=tuple(priors),
        feature_log_prob=tuple(log_probs),
    )


def _gini_from_counts(n0: float, n1: float) -> float:
    total = n0 + n1
    if total == 0:
        return 0.0
    p0 = n0 / total
    p1 = n1 / total
    return 1.0 - p0 * p0 - p1 * p1


def _candidate_features(X: np.ndarray, max_features: int | None) -> np.ndarray:
    d = X.shape[1]
    if max_features is None or max_features >= d:
        return np.arange(d)
    # Deterministic cap: keep the highest-variance columns, ties by index.
    variances = X.var(axis=0)
    order = np.lexsort((np.arange(d), -variances))
    return np.sort(order[:max_features])


def _best_split(X: np.ndarray, y: np.ndarray, features: np.ndarray):
    """Best (gain, feature, threshold); thresholds are midpoints of sorted
    unique values.  Zero-gain splits are allowed so impure nodes of
    distinguishable points always split (ties: smaller feature, then
    smaller threshold).  Returns None when no feature has two values."""
    n = len(y)
    parent_n1 = int(y.sum())
    parent_gini = _gini_from_counts(n - parent_n1, parent_n1)
    best = None
    for f in features:
        column = X[:, f]
        order = np.argsort(column, kind="stable")
        sorted_vals = column[order]
        sorted_y = y[order]
        ones_prefix = np.cumsum(sorted_y)
        # Split between consecutive distinct values only.
        boundaries = np.nonzero(sorted_vals[1:] > sorted_vals[:-1])[0]
        for b in boundaries:
            left_n = b + 1
            left_n1 = int(ones_prefix[b])
            right_n = n - left_n
            right_n1 = parent_n1 - left_n1
            weighted = (
                left_n * _gini_from_counts(left_n - left_n1, left_n1)
                + right_n * _gini_from_counts(right_n - right_n1, right_n1)
            ) / n
            gain = parent_gini - weighted
            threshold = (float(sorted_vals[b]) + float(sorted_vals[b + 1])) / 2.0
            key = (-gain, int(f), threshold)
            if best is None or key < best[0]:
                best = (key, gain, int(f), threshold)
    if best is None:
        return None
    _, gain, feature, threshold = best
    return gain, feature, threshold


def _majority_label(y: np.ndarray) -> int:
    n1 = int(y.sum())
    n0 = len(y) - n1
    if n1 > n0:
        return 1
    return 0  # ties resolve to the non-spam label


def _fit_tree(matrix: FeatureMatrix, config: TrainConfig) -> DecisionTreeModel:
    X = matrix.to_dense()
    y = matrix.labels_array()
    features = _candidate_features(X, config.tree_max_features)
    nodes: list[TreeNode] = []

    def build(indices: np.ndarray, depth: int) -> int:
        node_id = len(nodes)
        nodes.append(TreeNode())  # placeholder, replaced below
        sub_y = y[indices]
        pure = sub_y.min() == sub_y.max()
        if (
            pure
            or depth >= config.tree_max_depth
            or len(indices) < config.tree_min_samples_split
        ):
            nodes[node_id] = TreeNode(label=_majority_label(sub_y))
            return node_id
        found = _best_split(X[indices], sub_y, features)
        if found is None:  # all candidate columns constant on this node
            nodes[node_id] = TreeNode(label=_majority_label(sub_y))
            return node_id
        _, feature, threshold = found
        mask = X[indices, feature] <= threshold
        left_id = build(indices[mask], depth + 1)
        right_id = build(indices[~mask], depth + 1)
        nodes[node_id] = TreeNode(
            feature=feature, threshold=threshold, left=left_id, right=right_id
        )
        return node_id

    build(np.arange(len(matrix)), 0)
    return DecisionTreeModel(dim=matrix.dim, nodes=tuple(nodes))


def train(matrix: FeatureMatrix, config: TrainConfig) -> TrainedClassifier:
    """Fit the configured algorithm; deterministic given (matrix, config)."""
    _require_non_empty(matrix)
    if config.algorithm == "nb":
        return _fit_nb(matrix, config)
    _require_both_classes(matrix, config.algorithm)
    if config.algorithm == "logistic":
        return _fit_logistic(matrix, config)
    if config.algorithm == "svm":
        model, _ = _fit_svm(matrix, config)
        return model
    return _fit_tree(matrix, config)


def _nb_scores(model: MultinomialNBModel, vector: SparseVector) -> list[float]:
    scores = []
    for c in range(len(model.class_labels)):
        log_prob = model.feature_log_prob[c]
        score = model.class_log_prior[c]
        for i, v in vector.entries:
            score += v * log_prob[i]
        scores.append(score)
    return scores


def predict(model: TrainedClassifier, vector: SparseVector) -> int:
    """Predicted binary label; ties everywhere resolve to label 0."""
    if vector.dim != model.dim:
        raise ValueError(f"dimension mismatch: vector {vector.dim}, model {model.dim}")
    if isinstance(model, MultinomialNBModel):
        scores = _nb_scores(model, vector)
        best = 0
        for c in range(1, len(scores)):
            if scores[c] > scores[best]:
                best = c
        return model.class_labels[best]
    if isinstance(model, (LogisticModel, LinearSvmModel)):
        return 1 if model.decision_score(vector) >= 0.0 else 0
    node = model.nodes[0]
    while not node.is_leaf:
        value = vector.get(node.feature)
        node = model.nodes[node.left if value <= node.threshold else node.right]
    return node.label


def predict_batch(model: TrainedClassifier, matrix: FeatureMatrix) -> list[int]:
    if matrix.dim != model.dim:
        raise ValueError(f"dimension mismatch: matrix {matrix.dim}, model {model.dim}")
    return [predict(model, row) for row in matrix.rows]
