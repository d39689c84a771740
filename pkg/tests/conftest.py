"""Shared helpers for building random sparse test data."""

from __future__ import annotations

import numpy as np

from textbalance.vectorize import FeatureMatrix, SparseVector


def rand_sparse(
    rng: np.random.Generator, dim: int, density: float = 0.4, nonneg: bool = False
) -> SparseVector:
    """Random sparse vector with ~density fraction of nonzero coordinates."""
    pairs = []
    for i in range(dim):
        if rng.random() < density:
            value = float(rng.normal())
            if nonneg:
                value = abs(value)
            if value != 0.0:
                pairs.append((i, value))
    return SparseVector.from_pairs(dim, pairs)


def rand_matrix(
    rng: np.random.Generator,
    n0: int,
    n1: int,
    dim: int,
    density: float = 0.4,
    nonneg: bool = False,
) -> FeatureMatrix:
    """Random matrix with n0 label-0 rows followed by n1 label-1 rows."""
    rows = [rand_sparse(rng, dim, density, nonneg) for _ in range(n0 + n1)]
    labels = [0] * n0 + [1] * n1
    return FeatureMatrix(rows=tuple(rows), labels=tuple(labels), dim=dim)


def dense_to_matrix(X, y) -> FeatureMatrix:
    """Exact conversion of a dense array + labels into a FeatureMatrix."""
    X = np.asarray(X, dtype=np.float64)
    rows = tuple(
        SparseVector.from_pairs(X.shape[1], [(j, X[i, j]) for j in range(X.shape[1])])
        for i in range(X.shape[0])
    )
    return FeatureMatrix(rows=rows, labels=tuple(int(v) for v in y), dim=X.shape[1])
