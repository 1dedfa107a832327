"""Shared fixtures: small datasets with controlled label balance."""

from __future__ import annotations

import random

import pytest

from textaug.corpus import Dataset, MultiLabelRecord
from textaug.providers import MockProvider

# Word pools for synthetic sentences. Each label gets signature words that
# only appear in its own records, on top of shared filler vocabulary.
FILLER = [
    "today", "work", "felt", "really", "about", "the", "day", "it", "was",
    "and", "then", "some", "more", "people", "said",
]

SIGNATURES = {
    "joy": ["delighted", "smiling", "cheerful"],
    "anger": ["furious", "seething", "outraged"],
    "fear": ["terrified", "panicked", "dread"],
    "sadness": ["weeping", "downcast", "somber"],
    "surprise": ["astonished", "startled", "unexpected"],
    "grief": ["mourning", "bereaved", "loss"],
    "relief": ["relieved", "unburdened", "easing"],
    "pride": ["accomplished", "triumphant", "earned"],
    "nervousness": ["jittery", "uneasy", "restless"],
    "embarrassment": ["blushing", "awkward", "sheepish"],
}


def make_record(
    rid: str, text: str, labels, split: str = "train"
) -> MultiLabelRecord:
    return MultiLabelRecord(id=rid, text=text, labels=frozenset(labels), split=split)


def synth_text(rng: random.Random, label: str) -> str:
    words = rng.sample(SIGNATURES[label], 2) + rng.sample(FILLER, 5)
    rng.shuffle(words)
    return " ".join(words) + "."


def build_imbalanced_dataset(
    labels_train_test: dict[str, tuple[int, int]], seed: int = 0
) -> Dataset:
    """One single-label record per (label, index); counts per label given
    as (train, test) pairs."""
    rng = random.Random(seed)
    records = []
    rid = 0
    for label, (n_train, n_test) in labels_train_test.items():
        for split, count in (("train", n_train), ("test", n_test)):
            for _ in range(count):
                records.append(
                    make_record(f"r{rid:05d}", synth_text(rng, label), [label], split)
                )
                rid += 1
    return Dataset(records=records, vocabulary=sorted(labels_train_test))


@pytest.fixture
def tiny_dataset() -> Dataset:
    counts = {"joy": (6, 2), "anger": (6, 2), "grief": (3, 2), "relief": (3, 2)}
    return build_imbalanced_dataset(counts, seed=3)


@pytest.fixture
def mock_provider() -> MockProvider:
    return MockProvider(seed=7)
