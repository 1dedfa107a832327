"""Downstream-impact measurement with a deterministic built-in classifier.

The classifier is TF-IDF features into one-vs-rest logistic regression,
trained by full-batch gradient descent with zero-initialized weights, so two
runs over the same data produce bit-identical models. It exists to measure
the CONTRAST between training on the original versus the augmented train
set under otherwise identical conditions, not to chase state of the art.
An import hook accepts externally produced predictions for people who train
their own models.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.sparse import csr_matrix

from . import kernels
from ._text import tokenize
from .corpus import Dataset
from .errors import (
    ConfigError,
    PredictionImportError,
    ValidationError,
)

CLASSIFICATION_CSV_HEADER = (
    "Data aug,FT Model,F1-macro (all Cls),%Change (all Cls),"
    "F1-macro (aug Cls),%Change (aug Cls),F1-macro (othr Cls),%Change (othr Cls)"
)

DEFAULT_MODEL_NAME = "tfidf-logreg"


@dataclass(frozen=True)
class ClassifierSettings:
    learning_rate: float = 0.5
    l2_lambda: float = 1e-4
    epochs: int = 200
    seed: int = 0
    min_df: int = 1
    lowercase: bool = True


@dataclass
class CsrMatrix:
    """Minimal CSR triple; the kernel API takes these arrays directly."""

    data: np.ndarray
    indices: np.ndarray
    indptr: np.ndarray
    n_cols: int

    @property
    def n_rows(self) -> int:
        return len(self.indptr) - 1

    def to_scipy(self) -> csr_matrix:
        return csr_matrix(
            (self.data, self.indices, self.indptr), shape=(self.n_rows, self.n_cols)
        )


@dataclass
class TfidfModel:
    vocabulary: dict[str, int]
    idf: np.ndarray
    min_df: int
    lowercase: bool


@dataclass
class LogRegModel:
    weights: np.ndarray
    bias: np.ndarray
    losses: np.ndarray
    settings: ClassifierSettings


@dataclass
class ClassificationReport:
    labels: list[str]
    per_label_f1: dict[str, float]
    augmented_labels: frozenset[str]
    f1_macro_all: float
    f1_macro_augmented: float
    f1_macro_other: float
    pct_change_all: float = 0.0
    pct_change_augmented: float = 0.0
    pct_change_other: float = 0.0
    method_name: str = "baseline"
    model_name: str = DEFAULT_MODEL_NAME
    notes: tuple[str, ...] = ()


def fit_tfidf(train_texts: list[str], settings: ClassifierSettings) -> TfidfModel:
    """Vocabulary and idf from the train texts.

    idf(t) = ln((1+N)/(1+df(t))) + 1 with N documents; terms below min_df
    are dropped; vocabulary indices are dense over the sorted terms.
    """
    docs = [tokenize(t, lowercase=settings.lowercase) for t in train_texts]
    df = Counter(term for doc in docs for term in set(doc))
    terms = sorted(t for t, c in df.items() if c >= settings.min_df)
    if not terms:
        raise ConfigError(
            f"tf-idf vocabulary is empty ({len(train_texts)} docs, min_df={settings.min_df})"
        )
    n_docs = len(docs)
    idf = np.array(
        [math.log((1 + n_docs) / (1 + df[t])) + 1.0 for t in terms], dtype=np.float64
    )
    return TfidfModel(
        vocabulary={t: i for i, t in enumerate(terms)},
        idf=idf,
        min_df=settings.min_df,
        lowercase=settings.lowercase,
    )


def transform(model: TfidfModel, texts: list[str]) -> CsrMatrix:
    """L2-normalized tf*idf rows; terms outside the vocabulary are ignored."""
    data: list[float] = []
    indices: list[int] = []
    indptr = [0]
    for text in texts:
        counts = Counter(
            model.vocabulary[tok]
            for tok in tokenize(text, lowercase=model.lowercase)
            if tok in model.vocabulary
        )
        cols = sorted(counts)
        values = [counts[c] * model.idf[c] for c in cols]
        norm = math.sqrt(math.fsum(v * v for v in values))
        if norm > 0:
            values = [v / norm for v in values]
        data.extend(values)
        indices.extend(cols)
        indptr.append(len(indices))
    return CsrMatrix(
        data=np.asarray(data, dtype=np.float64),
        indices=np.asarray(indices, dtype=np.int32),
        indptr=np.asarray(indptr, dtype=np.int32),
        n_cols=len(model.vocabulary),
    )


def train(features: CsrMatrix, targets: np.ndarray, settings: ClassifierSettings) -> LogRegModel:
    """One-vs-rest logistic regression by full-batch gradient descent.

    Loss: sum over labels of the per-label mean binary cross-entropy, plus
    (l2/2)*||W||^2. Weights start at zero, so training is RNG-free. The
    returned loss history has epochs+1 entries; the last one is the loss of
    the returned model.
    """
    targets = np.asarray(targets, dtype=np.float64)
    if settings.epochs < 1:
        raise ValidationError("epochs must be >= 1")
    if targets.ndim != 2 or targets.shape[0] != features.n_rows:
        raise ValidationError(
            f"targets shape {targets.shape} does not match {features.n_rows} feature rows"
        )
    weights, bias, losses = kernels.logreg_fit(
        features.data,
        features.indices,
        features.indptr,
        features.n_cols,
        np.ascontiguousarray(targets),
        settings.learning_rate,
        settings.l2_lambda,
        settings.epochs,
    )
    return LogRegModel(weights=weights, bias=bias, losses=losses, settings=settings)


def predict(model: LogRegModel, features: CsrMatrix) -> np.ndarray:
    """Binary N x L matrix; positive iff predicted probability exceeds 0.5."""
    if features.n_cols != model.weights.shape[1]:
        raise ValidationError(
            f"feature dimension {features.n_cols} does not match model "
            f"dimension {model.weights.shape[1]}"
        )
    logits = features.to_scipy() @ model.weights.T + model.bias
    # sigmoid(z) > 0.5 is exactly z > 0; strict, so 0.5 itself is negative
    return (logits > 0).astype(np.int8)


def label_matrix(records, labels: list[str]) -> np.ndarray:
    """Dense binary indicator matrix in the given label column order."""
    index = {label: j for j, label in enumerate(labels)}
    out = np.zeros((len(records), len(labels)), dtype=np.float64)
    for i, record in enumerate(records):
        for label in record.labels:
            out[i, index[label]] = 1.0
    return out


def _macro(values: list[float]) -> float:
    return sum(values) / len(values) if values else 0.0


def _pct_change(new: float, base: float) -> tuple[float, bool]:
    if base == 0.0:
        return 0.0, True
    return 100.0 * (new - base) / base, False


def f1_report(
    predictions: np.ndarray,
    gold: np.ndarray,
    labels: list[str],
    augmented_labels,
    baseline: ClassificationReport | None = None,
    *,
    method_name: str = "baseline",
    model_name: str = DEFAULT_MODEL_NAME,
) -> ClassificationReport:
    """Per-label F1 plus group macros over {all, augmented, other}.

    F1 = 2TP/(2TP+FP+FN), defined as 0 where the denominator is 0. Percent
    change against the baseline report is 0 (and noted) where the baseline
    group macro is 0; without a baseline all change fields are 0.
    """
    predictions = np.asarray(predictions)
    gold = np.asarray(gold)
    if predictions.shape != gold.shape or predictions.shape[1] != len(labels):
        raise ValidationError(
            f"prediction shape {predictions.shape} does not match gold "
            f"{gold.shape} over {len(labels)} labels"
        )
    augmented_labels = frozenset(augmented_labels)
    if not augmented_labels <= set(labels):
        raise ValidationError(
            f"augmented labels {sorted(augmented_labels - set(labels))} "
            "are not in the label set"
        )
    per_label: dict[str, float] = {}
    for j, label in enumerate(labels):
        pred_j = predictions[:, j] == 1
        gold_j = gold[:, j] == 1
        tp = int(np.sum(pred_j & gold_j))
        fp = int(np.sum(pred_j & ~gold_j))
        fn = int(np.sum(~pred_j & gold_j))
        denom = 2 * tp + fp + fn
        per_label[label] = 2 * tp / denom if denom else 0.0

    aug_f1 = [per_label[l] for l in labels if l in augmented_labels]
    other_f1 = [per_label[l] for l in labels if l not in augmented_labels]
    notes: list[str] = []
    if not aug_f1:
        notes.append("empty_group_augmented")
    if not other_f1:
        notes.append("empty_group_other")

    report = ClassificationReport(
        labels=list(labels),
        per_label_f1=per_label,
        augmented_labels=augmented_labels,
        f1_macro_all=_macro(list(per_label.values())),
        f1_macro_augmented=_macro(aug_f1),
        f1_macro_other=_macro(other_f1),
        method_name=method_name,
        model_name=model_name,
    )
    if baseline is not None:
        if baseline.labels != report.labels:
            raise ValidationError(
                "baseline report has a different label set; reports are not comparable"
            )
        for group in ("all", "augmented", "other"):
            new = getattr(report, f"f1_macro_{group}")
            base = getattr(baseline, f"f1_macro_{group}")
            change, flagged = _pct_change(new, base)
            setattr(report, f"pct_change_{group}", change)
            if flagged:
                notes.append(f"zero_baseline_{group}")
    report.notes = tuple(notes)
    return report


def run_eval(
    original: Dataset,
    augmented: Dataset,
    augmented_labels,
    settings: ClassifierSettings | None = None,
    *,
    method_name: str = "augmented",
    model_name: str = DEFAULT_MODEL_NAME,
) -> tuple[ClassificationReport, ClassificationReport]:
    """Train on each train set independently, evaluate both on the shared
    test split, and return (baseline report, augmented report)."""
    settings = settings or ClassifierSettings()
    orig_test = original.split("test")
    aug_test = augmented.split("test")
    if not orig_test:
        raise ConfigError("original dataset has no test split")
    if [(r.id, r.text, r.labels) for r in orig_test] != [
        (r.id, r.text, r.labels) for r in aug_test
    ]:
        raise ValidationError("test splits differ between original and augmented datasets")

    labels = sorted(original.vocabulary)
    gold = label_matrix(orig_test, labels)

    def _fit_and_predict(dataset: Dataset) -> np.ndarray:
        train_records = dataset.split("train")
        if not train_records:
            raise ConfigError("dataset has no train split")
        tfidf = fit_tfidf([r.text for r in train_records], settings)
        features = transform(tfidf, [r.text for r in train_records])
        model = train(features, label_matrix(train_records, labels), settings)
        return predict(model, transform(tfidf, [r.text for r in orig_test]))

    baseline = f1_report(
        _fit_and_predict(original), gold, labels, augmented_labels,
        method_name="baseline", model_name=model_name,
    )
    augmented_report = f1_report(
        _fit_and_predict(augmented), gold, labels, augmented_labels, baseline,
        method_name=method_name, model_name=model_name,
    )
    return baseline, augmented_report


def import_external_predictions(path: str | Path, gold_dataset: Dataset) -> np.ndarray:
    """Binary prediction matrix from a JSONL of {id, labels}, aligned to the
    gold test ordering. Every test id must appear exactly once."""
    test_records = gold_dataset.split("test")
    if not test_records:
        raise ConfigError("gold dataset has no test split")
    labels = sorted(gold_dataset.vocabulary)
    index = {label: j for j, label in enumerate(labels)}
    test_ids = [r.id for r in test_records]
    known = set(test_ids)

    by_id: dict[str, list[str]] = {}
    duplicates: list[str] = []
    unknown: list[str] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                rid, rlabels = obj["id"], obj["labels"]
            except (ValueError, KeyError, TypeError) as exc:
                raise PredictionImportError(
                    f"{path}:{lineno}: expected one {{id, labels}} object per line: {exc}"
                ) from exc
            if rid in by_id:
                duplicates.append(rid)
                continue
            if rid not in known:
                unknown.append(rid)
                continue
            bad = [l for l in rlabels if l not in index]
            if bad:
                raise PredictionImportError(
                    f"{path}:{lineno}: unknown labels {sorted(bad)} for id {rid!r}"
                )
            by_id[rid] = list(rlabels)
    missing = [rid for rid in test_ids if rid not in by_id]
    problems = []
    if duplicates:
        problems.append(f"duplicate ids: {sorted(set(duplicates))}")
    if unknown:
        problems.append(f"unknown ids: {sorted(set(unknown))}")
    if missing:
        problems.append(f"missing ids: {missing}")
    if problems:
        raise PredictionImportError("; ".join(problems))

    out = np.zeros((len(test_ids), len(labels)), dtype=np.int8)
    for i, rid in enumerate(test_ids):
        for label in by_id[rid]:
            out[i, index[label]] = 1
    return out


def _fmt_f1(value: float) -> str:
    return "%.4f" % value


def _fmt_pct(value: float) -> str:
    return "%.2f" % value


def render_classification_csv(reports: list[ClassificationReport]) -> str:
    lines = [CLASSIFICATION_CSV_HEADER]
    for r in reports:
        lines.append(
            ",".join(
                [
                    r.method_name,
                    r.model_name,
                    _fmt_f1(r.f1_macro_all),
                    _fmt_pct(r.pct_change_all),
                    _fmt_f1(r.f1_macro_augmented),
                    _fmt_pct(r.pct_change_augmented),
                    _fmt_f1(r.f1_macro_other),
                    _fmt_pct(r.pct_change_other),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def classification_report_rows(reports: list[ClassificationReport]) -> list[dict]:
    """Full-precision dict rows, one per report."""
    return [
        {
            "method": r.method_name,
            "model": r.model_name,
            "f1_macro_all": r.f1_macro_all,
            "pct_change_all": r.pct_change_all,
            "f1_macro_augmented": r.f1_macro_augmented,
            "pct_change_augmented": r.pct_change_augmented,
            "f1_macro_other": r.f1_macro_other,
            "pct_change_other": r.pct_change_other,
            "per_label_f1": r.per_label_f1,
            "augmented_labels": sorted(r.augmented_labels),
            "notes": list(r.notes),
        }
        for r in reports
    ]


def classification_report_json(reports: list[ClassificationReport]) -> str:
    return json.dumps(
        classification_report_rows(reports), indent=2, sort_keys=True, ensure_ascii=False
    ) + "\n"
