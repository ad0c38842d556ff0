"""Confusion-matrix evaluation of a trained model on a labeled dataset."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .booster import Ensemble
from .hashing import fnv1a64_hex
from .ingest import Dataset


@dataclass(frozen=True)
class EvalReport:
    """Confusion counts and derived metrics; degenerate flags mark 0/0 ratios."""

    n: int
    tp: int
    fp: int
    tn: int
    fn: int
    accuracy: float
    precision: float
    recall: float
    f1: float
    precision_degenerate: bool
    recall_degenerate: bool


def evaluate(model: Ensemble, data: Dataset) -> EvalReport:
    """Classify every sample and tally the confusion matrix.

    Precision and recall use the 0/0 -> 0 convention, flagged in the report.
    """
    if data.n_samples == 0:
        raise ValueError("cannot evaluate an empty dataset")
    if data.X.shape[1] != len(model.vocabulary):
        raise ValueError(
            f"dataset width {data.X.shape[1]} does not match model vocabulary size {len(model.vocabulary)}"
        )
    predicted, _ = model.classify_batch(data.X)
    actual = data.y
    tp = int(np.sum((predicted == 1) & (actual == 1)))
    fp = int(np.sum((predicted == 1) & (actual == 0)))
    tn = int(np.sum((predicted == 0) & (actual == 0)))
    fn = int(np.sum((predicted == 0) & (actual == 1)))
    n = data.n_samples
    accuracy = (tp + tn) / n
    precision_degenerate = (tp + fp) == 0
    recall_degenerate = (tp + fn) == 0
    precision = 0.0 if precision_degenerate else tp / (tp + fp)
    recall = 0.0 if recall_degenerate else tp / (tp + fn)
    f1 = 0.0 if precision + recall == 0.0 else 2.0 * precision * recall / (precision + recall)
    return EvalReport(
        n=n,
        tp=tp,
        fp=fp,
        tn=tn,
        fn=fn,
        accuracy=accuracy,
        precision=precision,
        recall=recall,
        f1=f1,
        precision_degenerate=precision_degenerate,
        recall_degenerate=recall_degenerate,
    )


def canonical_dataset_bytes(data: Dataset) -> bytes:
    """Canonical CSV rendering of a dataset, used for content fingerprints.

    Header row lists the vocabulary; each data row is the label followed by
    shortest-round-trip feature values. Byte-stable for identical datasets.
    """
    lines = ["label," + ",".join(data.vocabulary.tokens)]
    for i in range(data.n_samples):
        values = ",".join(repr(float(v)) for v in data.X[i])
        lines.append(f"{int(data.y[i])},{values}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def dataset_fingerprint(data: Dataset) -> str:
    """64-bit FNV-1a hex digest of the canonical dataset bytes."""
    return fnv1a64_hex(canonical_dataset_bytes(data))


def report_payload(report: EvalReport, fingerprint: str, config_echo: dict, model_id: str) -> dict:
    """JSON-ready report: metrics plus the config and data identity that produced them.

    Deliberately timestamp-free so identical runs serialize byte-identically.
    """
    return {
        "format_version": 1,
        "n": report.n,
        "tp": report.tp,
        "fp": report.fp,
        "tn": report.tn,
        "fn": report.fn,
        "accuracy": report.accuracy,
        "precision": report.precision,
        "recall": report.recall,
        "f1": report.f1,
        "precision_degenerate": report.precision_degenerate,
        "recall_degenerate": report.recall_degenerate,
        "dataset_fingerprint": fingerprint,
        "model_id": model_id,
        "config": config_echo,
    }
