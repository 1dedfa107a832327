"""Multi-label dataset loading, validation, statistics, and persistence.

Two on-disk formats are supported:

* JSONL: one object per line with ``id``, ``text``, ``labels`` (array of
  strings) and an optional ``split``.
* TSV: GoEmotions-compatible rows ``text<TAB>comma-separated label
  indices<TAB>row id`` plus a sidecar label file (one label name per line,
  index = line number). TSV rows carry no split, so everything defaults to
  train unless the caller forces a split.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError, ValidationError

logger = logging.getLogger(__name__)

SPLITS = ("train", "validation", "test")


@dataclass
class MultiLabelRecord:
    """One text sample with its label set and provenance."""

    id: str
    text: str
    labels: frozenset[str]
    split: str = "train"
    meta: dict = field(default_factory=dict)

    def validate(self) -> None:
        if not self.text.strip():
            raise ValidationError(f"record {self.id!r} has empty text")
        if not self.labels:
            raise ValidationError(f"record {self.id!r} has no labels")
        if self.split not in SPLITS:
            raise ValidationError(f"record {self.id!r} has unknown split {self.split!r}")


@dataclass
class LabelStats:
    label: str
    count: int
    frequency: float


@dataclass
class LabelCorrelationMatrix:
    labels: list[str]
    values: list[list[float]]


@dataclass
class Dataset:
    """An ordered list of records plus the label vocabulary."""

    records: list[MultiLabelRecord]
    vocabulary: list[str]

    def __post_init__(self):
        self._check()

    def _check(self) -> None:
        vocab = set(self.vocabulary)
        seen: set[str] = set()
        bad_text = []
        for rec in self.records:
            if rec.id in seen:
                raise ValidationError(f"duplicate record id {rec.id!r}")
            seen.add(rec.id)
            if not rec.text.strip():
                bad_text.append(rec.id)
                continue
            rec.validate()
            unknown = rec.labels - vocab
            if unknown:
                raise ValidationError(
                    f"record {rec.id!r} uses labels outside the vocabulary: {sorted(unknown)}"
                )
        if bad_text:
            raise ValidationError(f"records with empty text: {bad_text}")

    def split(self, name: str) -> list[MultiLabelRecord]:
        return [r for r in self.records if r.split == name]

    @property
    def splits_present(self) -> list[str]:
        present = {r.split for r in self.records}
        return [s for s in SPLITS if s in present]


def load_dataset(
    path: str | Path,
    format: str,
    label_file: str | Path | None = None,
    force_split: str | None = None,
) -> Dataset:
    """Load one file into a Dataset.

    ``label_file`` supplies an explicit vocabulary (mandatory for TSV,
    optional for JSONL; when given, unknown labels are an error).
    ``force_split`` overrides any per-record split.
    """
    path = Path(path)
    if not path.exists():
        raise OSError(f"dataset file not found: {path}")
    if format == "jsonl":
        records, vocab = _load_jsonl(path)
    elif format == "tsv":
        if label_file is None:
            label_file = path.with_name("labels.txt")
        records, vocab = _load_tsv(path, Path(label_file))
    else:
        raise ConfigError(f"unknown dataset format {format!r}")

    if label_file is not None and format == "jsonl":
        vocab = read_label_file(Path(label_file))
    if force_split is not None:
        if force_split not in SPLITS:
            raise ConfigError(f"unknown split {force_split!r}")
        for rec in records:
            rec.split = force_split
    if vocab is None:
        vocab = sorted({label for rec in records for label in rec.labels})
    return Dataset(records=records, vocabulary=vocab)


def read_label_file(path: Path) -> list[str]:
    if not path.exists():
        raise OSError(f"label file not found: {path}")
    labels = [line.strip() for line in path.read_text(encoding="utf-8").splitlines()]
    return [l for l in labels if l]


def _load_jsonl(path: Path) -> tuple[list[MultiLabelRecord], None]:
    records = []
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValidationError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
            try:
                rec = MultiLabelRecord(
                    id=str(obj["id"]),
                    text=str(obj["text"]),
                    labels=frozenset(str(l) for l in obj["labels"]),
                    split=str(obj.get("split", "train")),
                    meta=dict(obj.get("meta", {})),
                )
            except KeyError as exc:
                raise ValidationError(f"{path}:{lineno}: missing field {exc}") from exc
            records.append(rec)
    return records, None


def _load_tsv(path: Path, label_file: Path) -> tuple[list[MultiLabelRecord], list[str]]:
    vocab = read_label_file(label_file)
    rows = []
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise ValidationError(
                    f"{path}:{lineno}: expected 3 tab-separated columns, got {len(parts)}"
                )
            text, idx_csv, row_id = parts
            try:
                indices = [int(tok) for tok in idx_csv.split(",") if tok != ""]
            except ValueError as exc:
                raise ValidationError(f"{path}:{lineno}: bad label index list {idx_csv!r}") from exc
            labels = set()
            for idx in indices:
                if not 0 <= idx < len(vocab):
                    raise ValidationError(
                        f"{path}:{lineno}: label index {idx} outside vocabulary of {len(vocab)}"
                    )
                labels.add(vocab[idx])
            rows.append((lineno, text, labels, row_id))

    # Column 3 doubles as the record id when its values are unique, which is
    # what write_dataset emits; raw GoEmotions files can repeat ids there, in
    # which case ids are synthesized and the column is kept as metadata.
    col3 = [row_id for _, _, _, row_id in rows]
    unique_col3 = len(set(col3)) == len(col3)
    stem = path.stem
    records = []
    for lineno, text, labels, row_id in rows:
        rid = row_id if unique_col3 else f"{stem}-{lineno:05d}"
        records.append(
            MultiLabelRecord(
                id=rid,
                text=text,
                labels=frozenset(labels),
                split="train",
                meta={} if unique_col3 else {"annotator": row_id},
            )
        )
    return records, vocab


def write_dataset(
    dataset: Dataset,
    path: str | Path,
    format: str,
    label_file: str | Path | None = None,
) -> None:
    """Persist a dataset; load_dataset(write_dataset(d)) == d.

    TSV refuses texts containing tabs (use JSONL for those).
    """
    path = Path(path)
    if format == "jsonl":
        with path.open("w", encoding="utf-8") as fh:
            for rec in dataset.records:
                obj = {
                    "id": rec.id,
                    "text": rec.text,
                    "labels": sorted(rec.labels),
                    "split": rec.split,
                }
                if rec.meta:
                    obj["meta"] = rec.meta
                fh.write(json.dumps(obj, ensure_ascii=False, sort_keys=True) + "\n")
    elif format == "tsv":
        index = {label: i for i, label in enumerate(dataset.vocabulary)}
        lines = []
        for rec in dataset.records:
            if rec.split != "train":
                raise ValidationError(
                    "TSV carries no split column; write JSONL or one TSV per split"
                )
            if "\t" in rec.text or "\n" in rec.text:
                raise ValidationError(
                    f"record {rec.id!r} contains a tab/newline; write JSONL instead"
                )
            idx_csv = ",".join(str(index[l]) for l in sorted(rec.labels, key=index.get))
            lines.append(f"{rec.text}\t{idx_csv}\t{rec.id}")
        path.write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
        if label_file is None:
            label_file = path.with_name("labels.txt")
        Path(label_file).write_text(
            "\n".join(dataset.vocabulary) + "\n", encoding="utf-8"
        )
    else:
        raise ConfigError(f"unknown dataset format {format!r}")


def concat_datasets(datasets: list[Dataset]) -> Dataset:
    """Concatenate loads of several files (e.g. train/dev/test) into one dataset."""
    records = []
    vocab: list[str] = []
    seen_vocab: set[str] = set()
    for ds in datasets:
        records.extend(ds.records)
        for label in ds.vocabulary:
            if label not in seen_vocab:
                seen_vocab.add(label)
                vocab.append(label)
    return Dataset(records=records, vocabulary=vocab)


def label_counts(dataset: Dataset, splits: list[str] | None = None) -> list[LabelStats]:
    """Exact label membership counts, sorted by count descending (ties by name)."""
    records = dataset.records
    if splits is not None:
        records = [r for r in records if r.split in splits]
    counts = {label: 0 for label in dataset.vocabulary}
    for rec in records:
        for label in rec.labels:
            counts[label] += 1
    n = len(records)
    stats = [
        LabelStats(label=label, count=c, frequency=(c / n if n else 0.0))
        for label, c in counts.items()
    ]
    stats.sort(key=lambda s: (-s.count, s.label))
    return stats


def select_least_represented(stats: list[LabelStats], k: int) -> list[str]:
    """The k rarest labels, ascending count, ties broken lexicographically."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if k > len(stats):
        raise ValueError(f"k={k} exceeds vocabulary size {len(stats)}")
    ordered = sorted(stats, key=lambda s: (s.count, s.label))
    return [s.label for s in ordered[:k]]


def label_correlation(dataset: Dataset) -> LabelCorrelationMatrix:
    """Pearson correlation between binary label-indicator columns.

    Constant columns (a label on all records or none) correlate 0 with
    everything; the diagonal is pinned to 1.0.
    """
    if not dataset.records:
        raise ValidationError("cannot correlate labels of an empty dataset")
    labels = list(dataset.vocabulary)
    n = len(dataset.records)
    cols = {
        label: [1.0 if label in rec.labels else 0.0 for rec in dataset.records]
        for label in labels
    }
    means = {label: sum(col) / n for label, col in cols.items()}
    centered = {
        label: [v - means[label] for v in col] for label, col in cols.items()
    }
    norms = {
        label: math.sqrt(sum(v * v for v in col)) for label, col in centered.items()
    }
    size = len(labels)
    values = [[0.0] * size for _ in range(size)]
    for i, a in enumerate(labels):
        values[i][i] = 1.0
        for j in range(i + 1, size):
            b = labels[j]
            if norms[a] == 0.0 or norms[b] == 0.0:
                r = 0.0
            else:
                cov = sum(x * y for x, y in zip(centered[a], centered[b]))
                r = cov / (norms[a] * norms[b])
            values[i][j] = r
            values[j][i] = r
    return LabelCorrelationMatrix(labels=labels, values=values)
