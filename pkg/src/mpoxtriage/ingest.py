"""Case-record ingestion: raw CSV rows to binary symptom feature vectors.

Raw records carry two free-text fields, a symptom list and a case status.
Symptom text is tokenized against configurable delimiters, normalized, and
binarized over a vocabulary derived from the data itself, so the feature
layout is a pure function of the input file.
"""

from __future__ import annotations

import csv
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Optional, Sequence

import numpy as np

_QUOTE_CHARS = "\"'‘’“”"


class IngestError(ValueError):
    """Base class for unusable input data."""


class MissingColumnError(IngestError):
    pass


class EmptyVocabularyError(IngestError):
    pass


class NoUsableRecordsError(IngestError):
    pass


class SingleClassError(IngestError):
    pass


@dataclass(frozen=True)
class RawRecord:
    """One input row, both fields verbatim as read from the file."""

    symptoms_text: str
    status_text: str


@dataclass(frozen=True)
class CsvFormat:
    """Column names, token delimiters, and the status-to-label mapping."""

    symptoms_column: str = "Symptoms"
    status_column: str = "Status"
    delimiters: str = ";,"
    status_labels: tuple[tuple[str, int], ...] = (("confirmed", 1), ("discarded", 0))

    def status_label(self, token: str) -> Optional[int]:
        for name, label in self.status_labels:
            if token == name:
                return label
        return None


DEFAULT_FORMAT = CsvFormat()


@dataclass(frozen=True)
class Vocabulary:
    """Ordered canonical symptom tokens; the token index is the feature index.

    Tokens must be unique, non-empty, and sorted lexicographically so the
    feature layout never depends on input row order.
    """

    tokens: tuple[str, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self.tokens:
            raise ValueError("vocabulary must contain at least one token")
        if any(not tok for tok in self.tokens):
            raise ValueError("vocabulary tokens must be non-empty")
        if len(set(self.tokens)) != len(self.tokens):
            raise ValueError("vocabulary tokens must be unique")
        if list(self.tokens) != sorted(self.tokens):
            raise ValueError("vocabulary tokens must be sorted")
        object.__setattr__(self, "_index", {tok: i for i, tok in enumerate(self.tokens)})

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[str]:
        return iter(self.tokens)

    def __contains__(self, token: str) -> bool:
        return token in self._index

    def index_of(self, token: str) -> Optional[int]:
        return self._index.get(token)


@dataclass(frozen=True)
class Sample:
    """A feature vector in [0, 1]^d plus a binary label (1 = positive case)."""

    features: np.ndarray
    label: int


@dataclass
class Dataset:
    """Feature matrix, labels, and the vocabulary that defines the columns."""

    vocabulary: Vocabulary
    X: np.ndarray
    y: np.ndarray

    def __post_init__(self) -> None:
        self.X = np.ascontiguousarray(self.X, dtype=np.float64)
        self.y = np.ascontiguousarray(self.y, dtype=np.int64)
        if self.X.ndim != 2 or self.y.ndim != 1 or self.X.shape[0] != self.y.shape[0]:
            raise ValueError("feature matrix and labels have mismatched shapes")
        if self.X.shape[1] != len(self.vocabulary):
            raise ValueError("feature width does not match vocabulary size")
        if self.X.size and not ((self.X >= 0.0) & (self.X <= 1.0)).all():
            raise ValueError("feature values must lie in [0, 1]")
        if self.y.size and not np.isin(self.y, (0, 1)).all():
            raise ValueError("labels must be 0 or 1")

    @property
    def n_samples(self) -> int:
        return self.X.shape[0]

    def class_counts(self) -> tuple[int, int]:
        """(negative_count, positive_count)."""
        counts = np.bincount(self.y, minlength=2)
        return int(counts[0]), int(counts[1])

    def subset(self, rows: Sequence[int]) -> "Dataset":
        rows = np.asarray(rows, dtype=np.intp)
        return Dataset(self.vocabulary, self.X[rows].copy(), self.y[rows].copy())

    def samples(self) -> Iterator[Sample]:
        for i in range(self.n_samples):
            yield Sample(self.X[i].copy(), int(self.y[i]))

    @classmethod
    def from_samples(cls, vocabulary: Vocabulary, samples: Sequence[Sample]) -> "Dataset":
        X = np.vstack([s.features for s in samples]) if samples else np.empty((0, len(vocabulary)))
        y = np.array([s.label for s in samples], dtype=np.int64)
        return cls(vocabulary, X, y)


@dataclass(frozen=True)
class IngestReport:
    """Row accounting for one load: what was kept, dropped, and unmatched."""

    total_rows: int
    dropped_rows: int
    n_positive: int
    n_negative: int
    unknown_tokens: int


def normalize_token(raw: str) -> str:
    """Canonical token form: trimmed, unquoted, lowercased, single-spaced."""
    text = raw.strip().strip(_QUOTE_CHARS)
    return " ".join(text.lower().split())


def parse_symptoms(symptoms_text: str, fmt: CsvFormat = DEFAULT_FORMAT) -> set[str]:
    """Split a free-text symptom list into the set of canonical tokens."""
    parts = re.split("[" + re.escape(fmt.delimiters) + "]", symptoms_text)
    return {tok for tok in (normalize_token(p) for p in parts) if tok}


def parse_status(status_text: str, fmt: CsvFormat = DEFAULT_FORMAT) -> Optional[int]:
    """Map a status field to a label, or None for records to exclude."""
    return fmt.status_label(normalize_token(status_text))


def build_vocabulary(records: Sequence[RawRecord], fmt: CsvFormat = DEFAULT_FORMAT) -> Vocabulary:
    """Union of symptom tokens over all label-bearing records, sorted.

    Records whose status does not map to a label contribute nothing.
    """
    tokens: set[str] = set()
    for record in records:
        if parse_status(record.status_text, fmt) is None:
            continue
        tokens |= parse_symptoms(record.symptoms_text, fmt)
    if not tokens:
        raise EmptyVocabularyError("no symptom tokens found in any labeled record")
    return Vocabulary(tuple(sorted(tokens)))


def vectorize(record: RawRecord, vocabulary: Vocabulary, fmt: CsvFormat = DEFAULT_FORMAT) -> Optional[Sample]:
    """Binarize one record against the vocabulary; None if the status has no label.

    Tokens absent from the vocabulary are ignored here; load_dataset tallies
    them into the ingestion report.
    """
    label = parse_status(record.status_text, fmt)
    if label is None:
        return None
    features = np.zeros(len(vocabulary), dtype=np.float64)
    for token in parse_symptoms(record.symptoms_text, fmt):
        idx = vocabulary.index_of(token)
        if idx is not None:
            features[idx] = 1.0
    return Sample(features, label)


def _read_records(path: Path, fmt: CsvFormat) -> list[RawRecord]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise NoUsableRecordsError(f"{path}: file is empty") from None
        try:
            symptoms_idx = header.index(fmt.symptoms_column)
        except ValueError:
            raise MissingColumnError(f"{path}: missing column {fmt.symptoms_column!r}") from None
        try:
            status_idx = header.index(fmt.status_column)
        except ValueError:
            raise MissingColumnError(f"{path}: missing column {fmt.status_column!r}") from None
        records = []
        for row in reader:
            if not row:
                continue
            symptoms = row[symptoms_idx] if symptoms_idx < len(row) else ""
            status = row[status_idx] if status_idx < len(row) else ""
            records.append(RawRecord(symptoms, status))
    return records


def load_dataset(
    path: str | Path,
    fmt: CsvFormat = DEFAULT_FORMAT,
    vocabulary: Optional[Vocabulary] = None,
) -> tuple[Dataset, IngestReport]:
    """Load a case CSV into a Dataset plus an ingestion report.

    When ``vocabulary`` is None it is derived from the file's own labeled
    records; otherwise records are vectorized against the given vocabulary
    and out-of-vocabulary tokens are counted into the report.
    """
    path = Path(path)
    records = _read_records(path, fmt)
    if not any(parse_status(r.status_text, fmt) is not None for r in records):
        raise NoUsableRecordsError(f"{path}: no records with a recognizable status")
    if vocabulary is None:
        vocabulary = build_vocabulary(records, fmt)

    rows: list[np.ndarray] = []
    labels: list[int] = []
    dropped = 0
    unknown = 0
    for record in records:
        label = parse_status(record.status_text, fmt)
        if label is None:
            dropped += 1
            continue
        tokens = parse_symptoms(record.symptoms_text, fmt)
        features = np.zeros(len(vocabulary), dtype=np.float64)
        for token in tokens:
            idx = vocabulary.index_of(token)
            if idx is None:
                unknown += 1
            else:
                features[idx] = 1.0
        rows.append(features)
        labels.append(label)

    if not rows:
        raise NoUsableRecordsError(f"{path}: no records with a recognizable status")
    y = np.array(labels, dtype=np.int64)
    n_pos = int((y == 1).sum())
    n_neg = int((y == 0).sum())
    if n_pos == 0 or n_neg == 0:
        raise SingleClassError(
            f"{path}: need both classes, got {n_pos} positive / {n_neg} negative"
        )
    dataset = Dataset(vocabulary, np.vstack(rows), y)
    report = IngestReport(
        total_rows=len(records),
        dropped_rows=dropped,
        n_positive=n_pos,
        n_negative=n_neg,
        unknown_tokens=unknown,
    )
    return dataset, report


def stratified_split(dataset: Dataset, test_fraction: float, seed: int) -> tuple[Dataset, Dataset]:
    """Deterministic per-class split; both partitions keep dataset row order.

    Per class, round-half-up(count * test_fraction) rows go to test, with at
    least one test row and at least one training row per class.
    """
    if not 0.0 < test_fraction < 1.0:
        raise ValueError(f"test_fraction must be in (0, 1), got {test_fraction}")
    rng = np.random.default_rng(seed)
    test_rows: list[np.ndarray] = []
    for label in (0, 1):
        rows = np.flatnonzero(dataset.y == label)
        if rows.size < 2:
            raise ValueError(f"class {label} has {rows.size} samples; need at least 2 to split")
        n_test = int(math.floor(rows.size * test_fraction + 0.5))
        n_test = min(max(n_test, 1), rows.size - 1)
        perm = rng.permutation(rows.size)
        test_rows.append(rows[perm[:n_test]])
    test_idx = np.sort(np.concatenate(test_rows))
    mask = np.zeros(dataset.n_samples, dtype=bool)
    mask[test_idx] = True
    train_idx = np.flatnonzero(~mask)
    return dataset.subset(train_idx), dataset.subset(test_idx)


def write_vocabulary(vocabulary: Vocabulary, path: str | Path) -> None:
    """Export tokens one per line, in feature-index order."""
    Path(path).write_text("\n".join(vocabulary.tokens) + "\n", encoding="utf-8")
