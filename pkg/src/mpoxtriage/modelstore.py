"""Model serialization with exact round-trip guarantees.

Models are stored as JSON: format_version, vocabulary (index order), the full
training config, the base margin, and the tree list, where each node is
either {"feature", "threshold", "left", "right"} or {"leaf"}. Floats are
written in Python's shortest round-trip representation, so save -> load
reproduces every weight bit-for-bit and repeated saves are byte-identical.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from .booster import Ensemble, TrainConfig, TreeNode
from .hashing import fnv1a64_hex
from .ingest import Vocabulary

FORMAT_VERSION = 1

_CONFIG_FIELDS = ("eta", "gamma", "reg_lambda", "n_trees", "max_depth", "min_child_weight", "base_score")


class ModelError(Exception):
    """Base class for model file problems."""


class ModelFormatError(ModelError):
    """The file is not valid JSON or does not match the schema."""


class ModelVersionError(ModelError):
    """The file declares an unsupported format_version."""


class ModelInvariantError(ModelError):
    """The file parses but violates a model invariant; message names the node path."""


def _require_finite_number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ModelFormatError(f"{path}: expected a number, got {type(value).__name__}")
    value = float(value)
    if not math.isfinite(value):
        raise ModelInvariantError(f"{path}: number must be finite, got {value}")
    return value


def _node_to_obj(node: TreeNode) -> dict:
    if node.is_leaf:
        return {"leaf": float(node.weight)}
    return {
        "feature": int(node.feature),
        "threshold": float(node.threshold),
        "left": _node_to_obj(node.left),
        "right": _node_to_obj(node.right),
    }


def _node_from_obj(obj, path: str, vocab_size: int, max_depth: int, depth: int) -> TreeNode:
    if not isinstance(obj, dict):
        raise ModelFormatError(f"{path}: expected an object")
    keys = set(obj)
    if keys == {"leaf"}:
        return TreeNode(weight=_require_finite_number(obj["leaf"], f"{path}.leaf"))
    if keys != {"feature", "threshold", "left", "right"}:
        raise ModelFormatError(f"{path}: node keys must be leaf or feature/threshold/left/right, got {sorted(keys)}")
    if depth >= max_depth:
        raise ModelInvariantError(f"{path}: tree exceeds max_depth {max_depth}")
    feature = obj["feature"]
    if isinstance(feature, bool) or not isinstance(feature, int):
        raise ModelFormatError(f"{path}.feature: expected an integer")
    if not 0 <= feature < vocab_size:
        raise ModelInvariantError(f"{path}.feature: index {feature} out of range for vocabulary size {vocab_size}")
    threshold = _require_finite_number(obj["threshold"], f"{path}.threshold")
    return TreeNode(
        feature=feature,
        threshold=threshold,
        left=_node_from_obj(obj["left"], f"{path}.left", vocab_size, max_depth, depth + 1),
        right=_node_from_obj(obj["right"], f"{path}.right", vocab_size, max_depth, depth + 1),
    )


def dumps(model: Ensemble) -> str:
    """Serialize a model to its canonical JSON text (deterministic bytes)."""
    payload = {
        "format_version": FORMAT_VERSION,
        "vocabulary": list(model.vocabulary.tokens),
        "config": {name: getattr(model.config, name) for name in _CONFIG_FIELDS},
        "base_margin": float(model.base_margin),
        "trees": [_node_to_obj(tree) for tree in model.trees],
    }
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def save(model: Ensemble, path: str | Path) -> None:
    Path(path).write_text(dumps(model), encoding="utf-8")


def loads(text: str) -> Ensemble:
    """Parse and validate canonical model JSON; see load for the error contract."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"model file is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise ModelFormatError("model file must contain a JSON object")

    version = payload.get("format_version")
    if version != FORMAT_VERSION:
        raise ModelVersionError(f"unsupported format_version {version!r}; this build reads version {FORMAT_VERSION}")

    missing = {"vocabulary", "config", "base_margin", "trees"} - set(payload)
    if missing:
        raise ModelFormatError(f"model file missing fields: {sorted(missing)}")

    vocab_obj = payload["vocabulary"]
    if not isinstance(vocab_obj, list) or not all(isinstance(t, str) for t in vocab_obj):
        raise ModelFormatError("vocabulary: expected an array of strings")
    try:
        vocabulary = Vocabulary(tuple(vocab_obj))
    except ValueError as exc:
        raise ModelInvariantError(f"vocabulary: {exc}") from exc

    config_obj = payload["config"]
    if not isinstance(config_obj, dict) or set(config_obj) != set(_CONFIG_FIELDS):
        raise ModelFormatError(f"config: expected exactly the fields {sorted(_CONFIG_FIELDS)}")
    try:
        config = TrainConfig(**config_obj)
    except (TypeError, ValueError) as exc:
        raise ModelInvariantError(f"config: {exc}") from exc

    base_margin = _require_finite_number(payload["base_margin"], "base_margin")

    trees_obj = payload["trees"]
    if not isinstance(trees_obj, list):
        raise ModelFormatError("trees: expected an array")
    if len(trees_obj) > config.n_trees:
        raise ModelInvariantError(f"trees: {len(trees_obj)} trees exceed config n_trees {config.n_trees}")
    trees = [
        _node_from_obj(obj, f"trees[{i}]", len(vocabulary), config.max_depth, 0)
        for i, obj in enumerate(trees_obj)
    ]
    return Ensemble(trees=trees, config=config, vocabulary=vocabulary, base_margin=base_margin)


def load(path: str | Path) -> Ensemble:
    """Read and validate a model file.

    Raises ModelFormatError for parse/schema problems, ModelVersionError for
    a version mismatch, ModelInvariantError (with the node path) for content
    that violates model invariants.
    """
    return loads(Path(path).read_text(encoding="utf-8"))


def model_id(model: Ensemble) -> str:
    """Content hash of the model's canonical serialization."""
    return fnv1a64_hex(dumps(model).encode("utf-8"))


def file_model_id(path: str | Path) -> str:
    """Content hash of a model file's bytes (equals model_id for our own files)."""
    return fnv1a64_hex(Path(path).read_bytes())
