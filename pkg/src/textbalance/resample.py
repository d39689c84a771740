"""Exact k-nearest-neighbor search and SMOTE synthetic oversampling.

Synthetic minority samples are linear interpolations between a minority
point and one of its k nearest minority-class neighbors (Euclidean, over
sparse vectors).  Base points are visited in deterministic round-robin
order over the minority set; the neighbor pick and the interpolation gap
come from two independent seeded streams, so changing k never perturbs
the gap sequence.  Oversampling is a training-set operation only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .rng import STREAM_GAP, STREAM_NEIGHBOR, derive_stream
from .vectorize import FeatureMatrix, SparseVector


@dataclass(frozen=True)
class SmoteConfig:
    k: int = 5
    seed: int = 0
    target: str = "equalize"

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.target != "equalize":
            raise ValueError(f"unsupported target {self.target!r}")

    def to_dict(self) -> dict:
        return {"k": self.k, "seed": self.seed, "target": self.target}


@dataclass(frozen=True)
class SyntheticSample:
    """A synthetic vector plus the (base, neighbor, gap) that produced it."""

    vector: SparseVector
    base_index: int
    neighbor_index: int
    gap: float


@dataclass
class ResampleReport:
    minority_before: int
    majority: int
    synthetic_created: int
    per_sample_usage: dict[int, int]
    minority_label: int | None = None
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "minority_before": self.minority_before,
            "majority": self.majority,
            "synthetic_created": self.synthetic_created,
            "per_sample_usage": {str(k): v for k, v in sorted(self.per_sample_usage.items())},
            "minority_label": self.minority_label,
            "warnings": list(self.warnings),
        }


def euclidean_distance(a: SparseVector, b: SparseVector) -> float:
    """Euclidean distance computed over the union of supports."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    acc = 0.0
    ai, bi = 0, 0
    ae, be = a.entries, b.entries
    while ai < len(ae) and bi < len(be):
        ia, va = ae[ai]
        ib, vb = be[bi]
        if ia == ib:
            d = va - vb
            acc += d * d
            ai += 1
            bi += 1
        elif ia < ib:
            acc += va * va
            ai += 1
        else:
            acc += vb * vb
            bi += 1
    for i in range(ai, len(ae)):
        acc += ae[i][1] * ae[i][1]
    for i in range(bi, len(be)):
        acc += be[i][1] * be[i][1]
    return math.sqrt(acc)


def interpolate(base: SparseVector, other: SparseVector, gap: float) -> SparseVector:
    """base + gap * (other - base), evaluated over the union of supports."""
    if base.dim != other.dim:
        raise ValueError(f"dimension mismatch: {base.dim} vs {other.dim}")
    base_map = dict(base.entries)
    other_map = dict(other.entries)
    values = {}
    for i in base_map.keys() | other_map.keys():
        b = base_map.get(i, 0.0)
        values[i] = b + gap * (other_map.get(i, 0.0) - b)
    return SparseVector.from_pairs(base.dim, values.items())


def knn(points: list[SparseVector], query_index: int, k: int) -> list[int]:
    """Indices of the k nearest points to points[query_index] (self excluded).

    Sorted by (distance, index); distance ties resolve to the smaller index.
    """
    n = len(points)
    if n < 2:
        raise ValueError("knn requires at least 2 points")
    if not 0 <= query_index < n:
        raise ValueError(f"query_index {query_index} outside [0, {n})")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    k = min(k, n - 1)
    query = points[query_index]
    ranked = sorted(
        (euclidean_distance(query, points[i]), i)
        for i in range(n)
        if i != query_index
    )
    return [i for _, i in ranked[:k]]


def smote_trace(
    minority: list[SparseVector], majority_count: int, config: SmoteConfig
) -> list[SyntheticSample]:
    """Generate majority_count - len(minority) synthetic samples with provenance."""
    t = len(minority)
    if t < 1:
        raise ValueError("minority set is empty")
    if majority_count < t:
        raise ValueError(
            f"majority_count {majority_count} smaller than minority count {t}"
        )
    n_new = majority_count - t
    if n_new == 0:
        return []

    if t == 1:
        # No neighbor exists: interpolation collapses to duplication.
        lone = minority[0]
        return [SyntheticSample(lone, 0, 0, 0.0) for _ in range(n_new)]

    k_eff = min(config.k, t - 1)
    neighbor_rng = derive_stream(config.seed, STREAM_NEIGHBOR)
    gap_rng = derive_stream(config.seed, STREAM_GAP)
    neighbors: dict[int, list[int]] = {}
    samples: list[SyntheticSample] = []
    for j in range(n_new):
        i = j % t
        if i not in neighbors:
            neighbors[i] = knn(minority, i, k_eff)
        nn_list = neighbors[i]
        nn = nn_list[neighbor_rng.next_below(len(nn_list))]
        gap = gap_rng.next_float()
        samples.append(SyntheticSample(interpolate(minority[i], minority[nn], gap), i, nn, gap))
    return samples


def smote(
    minority: list[SparseVector], majority_count: int, config: SmoteConfig
) -> list[SparseVector]:
    """Synthetic minority vectors only; see smote_trace for provenance."""
    return [s.vector for s in smote_trace(minority, majority_count, config)]


def balance_training_set(
    matrix: FeatureMatrix, config: SmoteConfig
) -> tuple[FeatureMatrix, ResampleReport]:
    """Equalize class counts by appending synthetic minority rows.

    Original rows are preserved unchanged and precede all synthetic rows.
    Must only ever be applied to training data.
    """
    counts = matrix.class_counts()
    if len(counts) < 2:
        raise ValueError("cannot balance a single-class matrix")
    (label_a, count_a), (label_b, count_b) = sorted(counts.items())
    if count_a == count_b:
        report = ResampleReport(
            minority_before=count_a,
            majority=count_b,
            synthetic_created=0,
            per_sample_usage={},
            minority_label=None,
        )
        return matrix, report

    minority_label = label_a if count_a < count_b else label_b
    majority_count = max(count_a, count_b)
    minority_rows = [i for i, lb in enumerate(matrix.labels) if lb == minority_label]
    minority = [matrix.rows[i] for i in minority_rows]

    trace = smote_trace(minority, majority_count, config)
    usage = {row: 0 for row in minority_rows}
    for sample in trace:
        usage[minority_rows[sample.base_index]] += 1

    report = ResampleReport(
        minority_before=len(minority),
        majority=majority_count,
        synthetic_created=len(trace),
        per_sample_usage=usage,
        minority_label=minority_label,
    )
    if len(minority) == 1:
        report.warnings.append(
            "single minority sample: synthetic rows are exact duplicates"
        )

    rows = matrix.rows + tuple(s.vector for s in trace)
    labels = matrix.labels + tuple(minority_label for _ in trace)
    return FeatureMatrix(rows=rows, labels=labels, dim=matrix.dim), report
