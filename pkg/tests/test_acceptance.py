"""Acceptance gate: every required behavior, one test (one pass/fail line) each.

Run with `pytest -v tests/test_acceptance.py` to see the line-per-criterion
output. Timed criteria assert their own wall-clock budgets.
"""

from __future__ import annotations

import itertools
import math
import os
import random
import time
from pathlib import Path

import numpy as np
import pytest

from conftest import build_imbalanced_dataset
from test_classify import loss_grad_at, random_problem
from test_cli import tree_bytes, write_env
from test_quality import (
    oracle_bertscore_f1,
    oracle_cosine,
    oracle_entropy,
    oracle_jaccard_dissimilarity,
    oracle_ttr,
)

from textaug import cli
from textaug.augment import (
    ParaphraseConfig,
    backtranslate,
    merge_into_training_set,
    oversample,
    paraphrase,
)
from textaug.classify import (
    CLASSIFICATION_CSV_HEADER,
    ClassifierSettings,
    f1_report,
    render_classification_csv,
    run_eval,
)
from textaug.corpus import Dataset, MultiLabelRecord
from textaug.providers.mock import MockProvider
from textaug.quality import (
    QUALITY_CSV_HEADER,
    SentencePair,
    bertscore_f1,
    cosine_similarity,
    entropy,
    evaluate_set,
    jaccard_dissimilarity,
    sample_pairs,
    ttr,
)

WORDS = ["alpha", "beta", "gamma", "delta", "echo", "fox", "golf", "hotel"]

FIXTURE_DIR = Path(__file__).parent / "fixtures" / "goemotions"


def random_text(rng: random.Random, lo: int = 1, hi: int = 10) -> str:
    return " ".join(rng.choices(WORDS, k=rng.randint(lo, hi)))


def test_metric_oracle_suite() -> None:
    # five metrics vs independent loop-based oracles on randomized inputs
    started = time.monotonic()
    rng = random.Random(1234)
    np_rng = np.random.default_rng(1234)
    for _ in range(120):
        a, b = random_text(rng), random_text(rng)
        assert jaccard_dissimilarity(a, b) == pytest.approx(
            oracle_jaccard_dissimilarity(a, b), abs=1e-12
        )
        assert entropy(a) == pytest.approx(oracle_entropy(a), abs=1e-12)
        texts = [random_text(rng) for _ in range(rng.randint(1, 5))]
        assert ttr(texts) == pytest.approx(oracle_ttr(texts), abs=1e-12)

        dim = rng.randint(2, 6)
        u = np_rng.normal(size=dim)
        v = np_rng.normal(size=dim)
        assert cosine_similarity(u.tolist(), v.tolist()) == pytest.approx(
            oracle_cosine(u.tolist(), v.tolist()), abs=1e-9
        )
        ref = [np_rng.normal(size=4) for _ in range(rng.randint(1, 4))]
        gen = [np_rng.normal(size=4) for _ in range(rng.randint(1, 4))]
        got = bertscore_f1(
            [("t", vec.tolist()) for vec in ref],
            [("t", vec.tolist()) for vec in gen],
        )
        want = oracle_bertscore_f1([v.tolist() for v in ref], [v.tolist() for v in gen])
        assert got == pytest.approx(want, abs=1e-9)
    assert time.monotonic() - started < 5.0


def test_identity_pairs_score_maximal_similarity() -> None:
    rng = random.Random(9)
    texts = [random_text(rng, 3, 8) for _ in range(9)]
    pairs = [SentencePair(t, t, i) for i, t in enumerate(texts)]
    report = evaluate_set("identity", pairs, MockProvider(seed=7))
    assert report.avg_jaccard == 0.0
    assert report.avg_entropy_ratio == 1.0
    assert report.word_ratio == 1.0
    assert report.ttr_ratio == 1.0
    assert report.avg_cosine == pytest.approx(1.0, abs=1e-9)
    assert report.avg_bertscore_f1 == pytest.approx(1.0, abs=1e-9)


def test_least_represented_label_counts(tmp_path: Path, capsys) -> None:
    started = time.monotonic()
    real_dir = os.environ.get("GOEMOTIONS_DIR")
    if real_dir:
        source = Path(real_dir)
        merged = tmp_path / "all.tsv"
        parts = sorted(source.glob("*.tsv"))
        assert parts, f"no .tsv files under {source}"
        merged.write_text(
            "".join(p.read_text(encoding="utf-8") for p in parts), encoding="utf-8"
        )
        labels = source / "emotions.txt"
        expected = [
            "grief,75", "pride,105", "relief,145", "nervousness,156",
            "embarrassment,291",
        ]
    else:
        merged = FIXTURE_DIR / "train.tsv"
        labels = FIXTURE_DIR / "emotions.txt"
        expected = [
            "grief,3", "pride,5", "relief,7", "nervousness,9", "embarrassment,11",
        ]
    rc = cli.main(
        ["stats", "--dataset", str(merged), "--format", "tsv",
         "--label-file", str(labels), "--k", "5"]
    )
    assert rc == 0
    assert capsys.readouterr().out.splitlines() == ["label,count"] + expected
    assert time.monotonic() - started < 10.0


def test_oversampling_factor_arithmetic() -> None:
    dataset = build_imbalanced_dataset({"grief": (75, 5), "joy": (100, 5)}, seed=2)
    assert len(oversample(dataset, ["grief"], 3)) == 225
    assert len(oversample(dataset, ["grief"], 5)) == 375


def test_paraphrase_nbal_hits_exact_per_class_targets() -> None:
    classes = ["joy", "anger", "fear", "sadness", "surprise"]
    dataset = build_imbalanced_dataset({c: (4, 1) for c in classes}, seed=4)
    config = ParaphraseConfig(
        prompt_mode="p2_batch", n=3, balance="nbal", target_per_class=10,
        model="mock-chat",
    )
    records = paraphrase(dataset, classes, config, MockProvider(seed=7), seed=4)
    counts = {c: 0 for c in classes}
    for rec in records:
        for label in rec.labels:
            counts[label] += 1
    assert [counts[c] for c in classes] == [10, 10, 10, 10, 10]


def test_backtranslation_volume_and_chains() -> None:
    dataset = build_imbalanced_dataset({"grief": (2, 1), "joy": (4, 1)}, seed=6)
    languages = ["ar", "bg", "de", "el", "es", "fi", "fr", "hi", "hu", "ja"]
    records = backtranslate(dataset, ["grief"], languages, MockProvider(seed=7), seed=6)
    assert len(records) == 20
    source_ids = {r.id for r in dataset.split("train") if "grief" in r.labels}
    for lang in languages:
        chains = [r.language_chain for r in records if r.language_chain[1] == lang]
        assert len(chains) == 2
        assert all(tuple(c) == ("en", lang, "en") for c in chains)
    assert {r.source_id for r in records} == source_ids


def test_every_fourth_pair_sampling() -> None:
    for n in range(1, 101):
        pairs = [SentencePair("a b", "c d", i) for i in range(n)]
        assert len(sample_pairs(pairs)) == math.ceil(n / 4)


def test_gradients_match_finite_differences() -> None:
    started = time.monotonic()
    rng = random.Random(77)
    h = 1e-5
    worst = 0.0
    for _ in range(20):
        X, Y = random_problem(rng)
        n_feats, n_labels = X.n_cols, Y.shape[1]
        W = np.array(
            [[rng.uniform(-0.5, 0.5) for _ in range(n_feats)] for _ in range(n_labels)]
        )
        b = np.array([rng.uniform(-0.5, 0.5) for _ in range(n_labels)])
        l2 = 1e-4
        _, dW, db = loss_grad_at(X, Y, W, b, l2)
        for _ in range(4):
            j, k = rng.randrange(n_labels), rng.randrange(n_feats)
            Wp, Wm = W.copy(), W.copy()
            Wp[j, k] += h
            Wm[j, k] -= h
            hi, _, _ = loss_grad_at(X, Y, Wp, b, l2)
            lo, _, _ = loss_grad_at(X, Y, Wm, b, l2)
            numeric = (hi - lo) / (2 * h)
            denom = max(abs(numeric), abs(dW[j, k]), 1e-8)
            worst = max(worst, abs(numeric - dW[j, k]) / denom)
        j = rng.randrange(n_labels)
        bp, bm = b.copy(), b.copy()
        bp[j] += h
        bm[j] -= h
        hi, _, _ = loss_grad_at(X, Y, W, bp, l2)
        lo, _, _ = loss_grad_at(X, Y, W, bm, l2)
        numeric = (hi - lo) / (2 * h)
        worst = max(worst, abs(numeric - db[j]) / max(abs(numeric), abs(db[j]), 1e-8))
    assert worst < 1e-4
    assert time.monotonic() - started < 5.0


# -- end-to-end directional check -------------------------------------------

E2E_FILLER = ["about", "today", "really", "just", "thing", "again", "still",
              "maybe", "while", "around", "quite", "very"]
E2E_COMMON = ["joy", "anger", "fear", "sadness", "surprise"]
E2E_RARE = ["grief", "relief", "pride", "nervousness", "embarrassment"]


def build_directional_dataset(seed: int) -> Dataset:
    """5 well-represented and 5 rare labels (10 train / 20 test each), with
    label-specific vocabularies; rare labels carry progressively weaker
    training signal so the baseline is imperfect but not hopeless."""
    rng = random.Random(seed)
    sig = {lab: [f"{lab}word{i}" for i in range(4)] for lab in E2E_COMMON + E2E_RARE}
    records = []
    rid = itertools.count()

    def add(label: str, split: str, n_sig: int, n_fill: int) -> None:
        words = rng.sample(sig[label], n_sig) + rng.choices(E2E_FILLER, k=n_fill)
        rng.shuffle(words)
        records.append(
            MultiLabelRecord(
                id=f"r{next(rid):05d}", text=" ".join(words) + ".",
                labels=frozenset([label]), split=split,
            )
        )

    for lab in E2E_COMMON:
        for _ in range(40):
            add(lab, "train", 3, 4)
        for _ in range(20):
            add(lab, "test", 3, 4)
    for k, lab in enumerate(E2E_RARE):
        n_sig_train = 2 if k < 2 else 1
        for _ in range(10):
            add(lab, "train", n_sig_train, 6)
        for _ in range(20):
            add(lab, "test", 2, 5)
    return Dataset(records, sorted(sig))


def test_augmentation_improves_rare_classes_without_hurting_others() -> None:
    started = time.monotonic()
    dataset = build_directional_dataset(seed=7)
    mock = MockProvider(seed=7)
    records = backtranslate(dataset, E2E_RARE, ["ar", "bg", "de", "el", "es"], mock, seed=7)
    merged = merge_into_training_set(dataset, records, seed=7)
    settings = ClassifierSettings(epochs=400, learning_rate=1.0)
    baseline, augmented = run_eval(
        dataset, merged, set(E2E_RARE), settings, method_name="bt"
    )
    assert 0.0 < baseline.f1_macro_augmented < 1.0
    assert augmented.pct_change_augmented > 0.0
    assert abs(augmented.pct_change_other) < 10.0
    assert time.monotonic() - started < 60.0


ALL_PLANS = [
    {"name": "os3", "strategy": "oversample", "factor": 3},
    {"name": "bt2", "strategy": "backtranslate", "languages": ["de", "fr"]},
    {"name": "para", "strategy": "paraphrase", "prompt_mode": "p2_batch", "n": 2},
    {"name": "gen", "strategy": "generate", "shots": 2, "n": 4, "per_class": 6},
]


def test_mock_pipeline_runs_are_byte_identical(tmp_path: Path, capsys) -> None:
    cfg = write_env(tmp_path, ALL_PLANS, seed=7)
    for run_dir in ("run1", "run2"):
        out = str(tmp_path / run_dir)
        for plan in ALL_PLANS:
            for command in ("augment", "quality", "train-eval"):
                rc = cli.main(
                    [command, "--config", str(cfg), "--mock", "--seed", "7",
                     "--plan", plan["name"], "--out", out]
                )
                assert rc == 0, (run_dir, command, plan["name"])
        assert cli.main(["report", "--config", str(cfg), "--out", out]) == 0
    capsys.readouterr()
    left = tree_bytes(tmp_path / "run1")
    right = tree_bytes(tmp_path / "run2")
    assert left.keys() == right.keys()
    assert left == right


def test_report_headers_and_pct_change_rendering() -> None:
    assert QUALITY_CSV_HEADER == (
        "Data aug.,Word Original,Word Generated,Word Ratio,Jaccard Dissimilarity,"
        "Entropy,TTR Ratio,Cosine Similarity,Bertscore-F1"
    )
    assert CLASSIFICATION_CSV_HEADER == (
        "Data aug,FT Model,F1-macro (all Cls),%Change (all Cls),F1-macro (aug Cls),"
        "%Change (aug Cls),F1-macro (othr Cls),%Change (othr Cls)"
    )
    # macro F1 0.40 improved to 0.44 must render as a +10.00 percent change
    gold_base = np.array([[1], [1], [0], [0], [1]], dtype=np.int8)
    pred_base = np.array([[1], [0], [1], [0], [0]], dtype=np.int8)
    baseline = f1_report(pred_base, gold_base, ["x"], set())
    assert baseline.f1_macro_all == pytest.approx(0.40)
    gold = np.zeros((50, 1), dtype=np.int8)
    gold[:39] = 1
    pred = np.zeros((50, 1), dtype=np.int8)
    pred[:11] = 1
    improved = f1_report(pred, gold, ["x"], set(), baseline, method_name="better")
    assert improved.f1_macro_all == pytest.approx(0.44)
    row = render_classification_csv([improved]).splitlines()[1]
    assert row.split(",")[3] == "10.00"
