"""Symptom-based monkeypox triage toolkit.

From-scratch gradient-boosted decision trees with exact greedy split
finding, SMOTE minority oversampling, a CSV ingestion pipeline, and an
HTTP inference service with a checkbox web UI.
"""

from .booster import Ensemble, TrainConfig, train
from .evaluation import EvalReport, evaluate
from .ingest import Dataset, Vocabulary, load_dataset, stratified_split
from .kernels import active_backend, available_backends
from .modelstore import load, save
from .sampler import SmoteConfig, oversample

__version__ = "0.1.0"

__all__ = [
    "Dataset",
    "EvalReport",
    "Ensemble",
    "SmoteConfig",
    "TrainConfig",
    "Vocabulary",
    "active_backend",
    "available_backends",
    "evaluate",
    "load",
    "load_dataset",
    "oversample",
    "save",
    "stratified_split",
    "train",
]
