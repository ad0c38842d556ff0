"""Gradient-boosted decision trees for binary symptom classification.

Each boosting round fits one regression tree to the first- and second-order
derivatives of the logistic loss at the current margins. Splits come from an
exact greedy scan over every feature boundary (see kernels); leaf weights are
the regularized Newton step -G / (H + lambda). Leaf weights are stored
unshrunk; the learning rate is applied when tree outputs are accumulated,
both during training and at prediction time.

Training is deterministic: no subsampling, no randomness, tie-breaks fixed
(lowest feature index, then lowest threshold), so identical inputs produce
byte-identical serialized models.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

import numpy as np

from . import kernels
from .ingest import Dataset, Vocabulary

PROB_CLAMP = 1e-15


class TrainingError(RuntimeError):
    """Numerical failure inside training (not a user input error)."""


@dataclass(frozen=True)
class TrainConfig:
    """Boosting hyperparameters.

    eta: shrinkage applied to every tree's contribution.
    gamma: complexity penalty subtracted from split gain; gain must stay > 0.
    reg_lambda: L2 regularizer on leaf weights, in both gain and weights.
    min_child_weight: minimum hessian sum allowed on each side of a split.
    base_score: initial probability; margins start at its log-odds.
    """

    eta: float = 0.0991
    gamma: float = 0.0
    reg_lambda: float = 1.0
    n_trees: int = 80
    max_depth: int = 6
    min_child_weight: float = 1.0
    base_score: float = 0.5

    def __post_init__(self) -> None:
        if not 0.0 < self.eta <= 1.0:
            raise ValueError(f"eta must be in (0, 1], got {self.eta}")
        if self.gamma < 0.0:
            raise ValueError(f"gamma must be >= 0, got {self.gamma}")
        if self.reg_lambda < 0.0:
            raise ValueError(f"reg_lambda must be >= 0, got {self.reg_lambda}")
        if self.n_trees < 1:
            raise ValueError(f"n_trees must be >= 1, got {self.n_trees}")
        if self.max_depth < 1:
            raise ValueError(f"max_depth must be >= 1, got {self.max_depth}")
        if self.min_child_weight < 0.0:
            raise ValueError(f"min_child_weight must be >= 0, got {self.min_child_weight}")
        if not 0.0 < self.base_score < 1.0:
            raise ValueError(f"base_score must be in (0, 1), got {self.base_score}")

    def base_margin(self) -> float:
        return math.log(self.base_score / (1.0 - self.base_score))


class GradPair(NamedTuple):
    g: float
    h: float


@dataclass(frozen=True)
class Split:
    feature: int
    threshold: float
    gain: float


@dataclass
class TreeNode:
    """Either an internal node (feature/threshold/children) or a leaf (weight).

    Routing: feature value < threshold goes left, >= threshold goes right.
    """

    feature: int = -1
    threshold: float = 0.0
    left: Optional["TreeNode"] = None
    right: Optional["TreeNode"] = None
    weight: float = 0.0

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    def depth(self) -> int:
        if self.is_leaf:
            return 0
        return 1 + max(self.left.depth(), self.right.depth())


def sigmoid(z: float) -> float:
    """Logistic link, numerically stable on both tails."""
    if z >= 0.0:
        return 1.0 / (1.0 + math.exp(-z))
    ez = math.exp(z)
    return ez / (1.0 + ez)


def _sigmoid_vec(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0.0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def log_loss(labels: np.ndarray, probs: np.ndarray) -> float:
    """Mean negative log-likelihood, with probabilities clamped away from 0/1.

    The clamp applies only here; gradients use exact probabilities.
    """
    p = np.clip(probs, PROB_CLAMP, 1.0 - PROB_CLAMP)
    yf = labels.astype(np.float64)
    return float(np.mean(-(yf * np.log(p) + (1.0 - yf) * np.log1p(-p))))


def logistic_grad(label: int, p: float) -> GradPair:
    """First and second derivative of the logistic loss w.r.t. the margin."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"probability must be in (0, 1), got {p}")
    return GradPair(g=p - label, h=p * (1.0 - p))


def leaf_weight(g_sum: float, h_sum: float, reg_lambda: float) -> float:
    """Regularized Newton step for a leaf: -G / (H + lambda)."""
    if h_sum + reg_lambda <= 0.0:
        raise ValueError("h_sum + reg_lambda must be positive")
    return -g_sum / (h_sum + reg_lambda)


def split_gain(gl: float, hl: float, gr: float, hr: float, reg_lambda: float, gamma: float) -> float:
    """Gain of a candidate split over leaving the node unsplit."""
    parent = (gl + gr) ** 2 / (hl + hr + reg_lambda)
    return 0.5 * (gl * gl / (hl + reg_lambda) + gr * gr / (hr + reg_lambda) - parent) - gamma


def _seq_sum(values: np.ndarray) -> float:
    # Strictly sequential accumulation so totals are reproducible across
    # platforms and match the kernels' own accumulation order.
    return float(np.cumsum(values)[-1]) if values.size else 0.0


def find_best_split(
    X: np.ndarray,
    g: np.ndarray,
    h: np.ndarray,
    rows: np.ndarray,
    config: TrainConfig,
) -> Optional[Split]:
    """Exact greedy search over all feature boundaries for the node ``rows``.

    Thresholds are midpoints of adjacent distinct sorted values. Candidates
    whose child hessian sums fall below min_child_weight are rejected. Returns
    None when no candidate has strictly positive gain.
    """
    if rows.size < 2:
        return None
    x_node = np.ascontiguousarray(X[rows])
    g_node = np.ascontiguousarray(g[rows])
    h_node = np.ascontiguousarray(h[rows])
    g_total = _seq_sum(g_node)
    h_total = _seq_sum(h_node)
    parent_term = g_total * g_total / (h_total + config.reg_lambda)
    order = np.argsort(x_node, axis=0, kind="stable")
    feature, threshold, gain = kernels.best_split(
        x_node,
        order,
        g_node,
        h_node,
        g_total,
        h_total,
        parent_term,
        config.reg_lambda,
        config.gamma,
        config.min_child_weight,
    )
    if feature < 0:
        return None
    return Split(feature=feature, threshold=threshold, gain=gain)


def build_tree(
    X: np.ndarray,
    g: np.ndarray,
    h: np.ndarray,
    rows: np.ndarray,
    config: TrainConfig,
) -> TreeNode:
    """Depth-first exact-greedy tree construction on the given rows."""

    def _grow(node_rows: np.ndarray, depth: int) -> TreeNode:
        split = None
        if depth < config.max_depth:
            split = find_best_split(X, g, h, node_rows, config)
        if split is None:
            weight = leaf_weight(_seq_sum(g[node_rows]), _seq_sum(h[node_rows]), config.reg_lambda)
            return TreeNode(weight=weight)
        values = X[node_rows, split.feature]
        left_rows = node_rows[values < split.threshold]
        right_rows = node_rows[values >= split.threshold]
        return TreeNode(
            feature=split.feature,
            threshold=split.threshold,
            left=_grow(left_rows, depth + 1),
            right=_grow(right_rows, depth + 1),
        )

    if rows.size < 1:
        raise ValueError("build_tree needs at least one row")
    return _grow(rows, 0)


def tree_leaf_values(root: TreeNode, X: np.ndarray) -> np.ndarray:
    """Route every row of X to its leaf and return the leaf weights."""
    out = np.empty(X.shape[0], dtype=np.float64)

    def _assign(node: TreeNode, idx: np.ndarray) -> None:
        if node.is_leaf:
            out[idx] = node.weight
            return
        go_left = X[idx, node.feature] < node.threshold
        _assign(node.left, idx[go_left])
        _assign(node.right, idx[~go_left])

    _assign(root, np.arange(X.shape[0]))
    return out


@dataclass
class Ensemble:
    """A trained additive model: ordered trees plus the config that built them."""

    trees: list[TreeNode]
    config: TrainConfig
    vocabulary: Vocabulary
    base_margin: float

    def _check_width(self, X: np.ndarray) -> None:
        if X.shape[-1] != len(self.vocabulary):
            raise ValueError(
                f"feature width {X.shape[-1]} does not match vocabulary size {len(self.vocabulary)}"
            )

    def predict_margins(self, X: np.ndarray) -> np.ndarray:
        """Raw additive margins for a batch; eta applied per tree, in order."""
        X = np.asarray(X, dtype=np.float64)
        self._check_width(X)
        margins = np.full(X.shape[0], self.base_margin, dtype=np.float64)
        for tree in self.trees:
            margins += self.config.eta * tree_leaf_values(tree, X)
        return margins

    def predict_margin(self, features: np.ndarray) -> float:
        features = np.asarray(features, dtype=np.float64)
        if features.ndim != 1:
            raise ValueError("predict_margin expects a single feature vector")
        return float(self.predict_margins(features[np.newaxis, :])[0])

    def classify_batch(self, X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """(labels, probabilities) for a batch; label 1 iff probability >= 0.5."""
        probs = _sigmoid_vec(self.predict_margins(X))
        return (probs >= 0.5).astype(np.int64), probs

    def classify(self, features: np.ndarray) -> tuple[int, float]:
        features = np.asarray(features, dtype=np.float64)
        if features.ndim != 1:
            raise ValueError("classify expects a single feature vector")
        labels, probs = self.classify_batch(features[np.newaxis, :])
        return int(labels[0]), float(probs[0])


def train(
    data: Dataset,
    config: TrainConfig,
    progress: Optional[Callable[[int, float], None]] = None,
) -> tuple[Ensemble, list[float]]:
    """Fit an ensemble; returns the model and the per-round training log-loss.

    Margins start at the base log-odds. Every round computes per-sample
    gradients from current probabilities, grows one tree over all samples,
    and shifts every margin by eta times the tree output.
    """
    n_neg, n_pos = data.class_counts()
    if n_neg == 0 or n_pos == 0:
        raise ValueError("training data must contain both classes")
    X = data.X
    yf = data.y.astype(np.float64)
    base_margin = config.base_margin()
    margins = np.full(data.n_samples, base_margin, dtype=np.float64)
    rows = np.arange(data.n_samples)
    trees: list[TreeNode] = []
    losses: list[float] = []
    for round_idx in range(config.n_trees):
        p = _sigmoid_vec(margins)
        g = p - yf
        h = p * (1.0 - p)
        root = build_tree(X, g, h, rows, config)
        trees.append(root)
        margins = margins + config.eta * tree_leaf_values(root, X)
        loss = log_loss(data.y, _sigmoid_vec(margins))
        if not math.isfinite(loss):
            raise TrainingError(f"non-finite training loss at round {round_idx}")
        losses.append(loss)
        if progress is not None:
            progress(round_idx, loss)
    return Ensemble(trees, config, data.vocabulary, base_margin), losses
