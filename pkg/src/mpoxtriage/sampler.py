"""SMOTE oversampling of the minority class.

New minority samples are synthesized by walking the segment between a
minority sample and one of its k nearest minority neighbors: given parent x,
neighbor z, and u drawn from [0, 1), the synthetic sample is x + u * (z - x).
Majority rows pass through untouched; synthetic rows are appended after all
original rows, so the original subset of the output is byte-identical to the
input. Every synthesis event is logged with its parents and u for audit.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .ingest import Dataset, Sample


@dataclass(frozen=True)
class SmoteConfig:
    """k_neighbors per parent, target minority/majority ratio, and the seed."""

    k_neighbors: int = 5
    target_ratio: float = 1.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.k_neighbors < 1:
            raise ValueError(f"k_neighbors must be >= 1, got {self.k_neighbors}")
        if not 0.0 < self.target_ratio <= 1.0:
            raise ValueError(f"target_ratio must be in (0, 1], got {self.target_ratio}")


@dataclass(frozen=True)
class Parentage:
    """One synthesis event: output row index, input row indices, and u."""

    synthetic_index: int
    parent_index: int
    neighbor_index: int
    u: float


def nearest_neighbors(minority: np.ndarray, index: int, k: int) -> np.ndarray:
    """Indices of the min(k, m-1) nearest other minority rows, by Euclidean distance.

    Ties break toward the lower index; the query row itself is excluded.
    Squared distances are used, which preserves the Euclidean ordering.
    """
    minority = np.asarray(minority, dtype=np.float64)
    m = minority.shape[0]
    if m < 2:
        raise ValueError("need at least two minority samples for neighbor search")
    if not 0 <= index < m:
        raise ValueError(f"index {index} out of range for {m} samples")
    diff = minority - minority[index]
    d2 = np.einsum("ij,ij->i", diff, diff)
    d2[index] = np.inf
    order = np.argsort(d2, kind="stable")
    return order[: min(k, m - 1)]


def synthesize(x: Sample, neighbor: Sample, u: float) -> Sample:
    """Interpolate between two same-label samples: x + u * (neighbor - x)."""
    if x.label != neighbor.label:
        raise ValueError("synthesis parents must share the minority label")
    if x.features.shape != neighbor.features.shape:
        raise ValueError("synthesis parents must share dimensionality")
    return Sample(x.features + u * (neighbor.features - x.features), x.label)


def oversample(train: Dataset, config: SmoteConfig) -> tuple[Dataset, list[Parentage]]:
    """Append synthetic minority rows until minority = floor(ratio * majority).

    Parents are cycled through in dataset order, each picking a random
    neighbor per pass, until the deficit is filled. With a single minority
    sample, synthesis degenerates to duplicating that sample.
    """
    n_neg, n_pos = train.class_counts()
    if n_neg == 0 or n_pos == 0:
        raise ValueError("oversampling needs both classes present")
    minority_label = 0 if n_neg <= n_pos else 1
    minority_count = min(n_neg, n_pos)
    majority_count = max(n_neg, n_pos)
    target = math.floor(config.target_ratio * majority_count)
    deficit = target - minority_count
    if deficit <= 0:
        return Dataset(train.vocabulary, train.X.copy(), train.y.copy()), []

    minority_rows = np.flatnonzero(train.y == minority_label)
    rng = np.random.default_rng(config.seed)
    n_original = train.n_samples
    synthetic = np.empty((deficit, train.X.shape[1]), dtype=np.float64)
    log: list[Parentage] = []

    if minority_rows.size == 1:
        only = int(minority_rows[0])
        for j in range(deficit):
            synthetic[j] = train.X[only]
            log.append(Parentage(n_original + j, only, only, 0.0))
    else:
        k = min(config.k_neighbors, minority_rows.size - 1)
        neighbor_rows = [
            minority_rows[nearest_neighbors(train.X[minority_rows], i, k)]
            for i in range(minority_rows.size)
        ]
        for j in range(deficit):
            i = j % minority_rows.size
            parent = int(minority_rows[i])
            candidates = neighbor_rows[i]
            neighbor = int(candidates[rng.integers(0, candidates.size)])
            u = float(rng.random())
            synthetic[j] = train.X[parent] + u * (train.X[neighbor] - train.X[parent])
            log.append(Parentage(n_original + j, parent, neighbor, u))

    X_out = np.vstack([train.X, synthetic])
    y_out = np.concatenate([train.y, np.full(deficit, minority_label, dtype=np.int64)])
    return Dataset(train.vocabulary, X_out, y_out), log


def write_parentage_csv(log: list[Parentage], path: str | Path) -> None:
    """Audit log: one row per synthetic sample with its parents and u."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["synthetic_index", "parent_index", "neighbor_index", "u"])
        for entry in log:
            writer.writerow([entry.synthetic_index, entry.parent_index, entry.neighbor_index, repr(entry.u)])
