"""The four augmentation strategies for under-represented classes.

Each strategy reads train-split records that carry at least one target
label and produces AugmentedRecords:

- oversample: verbatim copies, `factor` per source record
- paraphrase: chat-backed rewording, one paraphrase per call (p1_iterative)
  or a batch per call (p2_batch), with optional per-class balancing
- generate: zero- or few-shot synthesis of brand-new records per class
- backtranslate: round trips through other languages, one record per
  (source record, language)

All strategies are deterministic for a fixed (provider, seed): provider
calls happen in a fixed order and the only randomness is a seeded RNG used
for balancing, truncation, and few-shot example picks.
"""

from __future__ import annotations

import hashlib
import json
import logging
import math
import random
import re
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import Dataset, MultiLabelRecord
from .errors import BalanceError, ConfigError, ProviderError, ValidationError
from .prompts import (
    GENERATION_SYSTEM_MESSAGE,
    PARAPHRASE_P1_TEMPLATE,
    PARAPHRASE_P2_TEMPLATE,
    PARAPHRASE_SYSTEM_MESSAGE,
    generation_prompt,
)
from .providers.base import (
    DEFAULT_GENERATION_TEMPERATURE,
    ChatRequest,
    TranslationRequest,
)

logger = logging.getLogger("textaug.augment")

METHODS = (
    "oversample",
    "paraphrase_p1",
    "paraphrase_p2",
    "zero_shot",
    "few_shot",
    "backtranslation",
)

SYNTHETIC_SOURCE = "synthetic"

_MARKER_RE = re.compile(r"^\s*(?:[-*]|\d+[.)])\s*")


@dataclass
class AugmentedRecord:
    id: str
    text: str
    labels: frozenset[str]
    source_id: str
    method: str
    model: str = ""
    language_chain: tuple[str, ...] = ()
    prompt_fingerprint: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.labels = frozenset(self.labels)
        self.language_chain = tuple(self.language_chain)
        if not self.text:
            raise ValidationError(f"augmented record {self.id!r} has empty text")
        if self.method not in METHODS:
            raise ValidationError(f"unknown augmentation method {self.method!r}")
        if (self.method == "backtranslation") != bool(self.language_chain):
            raise ValidationError(
                "language_chain must be set for backtranslation and empty otherwise"
            )


@dataclass(frozen=True)
class ParaphraseConfig:
    prompt_mode: str = "p1_iterative"  # or "p2_batch"
    n: int = 1
    balance: str = "nmax"  # or "nbal"
    target_per_class: int = 0
    model: str = "mock-chat"

    def validate(self) -> None:
        if self.prompt_mode not in ("p1_iterative", "p2_batch"):
            raise ConfigError(f"unknown prompt_mode {self.prompt_mode!r}")
        if self.n < 1:
            raise ConfigError("paraphrase n must be >= 1")
        if self.balance not in ("nmax", "nbal"):
            raise ConfigError(f"unknown balance mode {self.balance!r}")
        if self.balance == "nbal" and self.target_per_class < 1:
            raise ConfigError("balance=nbal requires target_per_class >= 1")


@dataclass(frozen=True)
class GenerationConfig:
    shots: int = 0
    n: int = 6
    per_class: int = 10
    model: str = "mock-chat"

    def validate(self) -> None:
        if self.shots < 0:
            raise ConfigError("shots must be >= 0")
        if self.n < 1 or self.per_class < 1:
            raise ConfigError("generation n and per_class must be >= 1")


def _fingerprint(system_message: str, user_prompt: str) -> str:
    h = hashlib.blake2b(digest_size=8)
    for part in (system_message, user_prompt):
        raw = part.encode("utf-8")
        h.update(len(raw).to_bytes(4, "big"))
        h.update(raw)
    return h.hexdigest()


def _sanitize(name: str) -> str:
    return "".join(ch if ch.isalnum() else "_" for ch in name)


def _eligible(dataset: Dataset, target_labels) -> list[MultiLabelRecord]:
    """Train records carrying at least one target label, in dataset order."""
    targets = set(target_labels)
    out = [r for r in dataset.split("train") if r.labels & targets]
    covered = {label for r in out for label in r.labels & targets}
    for label in target_labels:
        if label not in covered:
            logger.warning("target label %r has no train records; nothing to augment", label)
    return out


def _parse_lines(content: str) -> list[str]:
    """Newline-split a completion, defensively stripping list markers."""
    lines = []
    for line in content.split("\n"):
        line = _MARKER_RE.sub("", line.strip()).strip()
        if len(line) >= 2:
            lines.append(line)
    return lines


def _emit(record: AugmentedRecord, out: list, sink: list | None) -> None:
    out.append(record)
    if sink is not None:
        sink.append(record)


def oversample(dataset: Dataset, target_labels, factor: int, seed: int = 0) -> list[AugmentedRecord]:
    """factor verbatim copies of every train record carrying a target label.

    A record carrying two target labels is still copied factor times total.
    The seed parameter is accepted for interface uniformity; copying uses
    no randomness.
    """
    if factor < 1:
        raise ValidationError("oversample factor must be >= 1")
    out: list[AugmentedRecord] = []
    for record in _eligible(dataset, target_labels):
        for i in range(factor):
            out.append(
                AugmentedRecord(
                    id=f"os-{record.id}-{i:03d}",
                    text=record.text,
                    labels=record.labels,
                    source_id=record.id,
                    method="oversample",
                )
            )
    return out


def paraphrase(
    dataset: Dataset,
    target_labels,
    config: ParaphraseConfig,
    client,
    seed: int = 0,
    sink: list | None = None,
) -> list[AugmentedRecord]:
    """Chat-backed paraphrases of target-class train records.

    p1_iterative asks for one paraphrase per call, n calls per record;
    p2_batch asks one call per record for n newline-separated paraphrases.
    balance=nbal reduces the raw output so every target class contributes
    exactly target_per_class records (seeded shuffle, then take), raising
    a balance error on shortfall. sink, if given, receives every raw record
    as soon as it exists, so partial work survives a provider abort.
    """
    config.validate()
    rng = random.Random(seed)
    raw: list[AugmentedRecord] = []
    for record in _eligible(dataset, target_labels):
        if config.prompt_mode == "p1_iterative":
            prompt = PARAPHRASE_P1_TEMPLATE.format(text=record.text)
            fp = _fingerprint(PARAPHRASE_SYSTEM_MESSAGE, prompt)
            for i in range(config.n):
                response = client.chat_complete(
                    ChatRequest(
                        model=config.model,
                        system_message=PARAPHRASE_SYSTEM_MESSAGE,
                        user_prompt=prompt,
                        temperature=DEFAULT_GENERATION_TEMPERATURE,
                        n_choices=1,
                    )
                )
                text = response.choices[0].strip()
                if not text:
                    continue
                _emit(
                    AugmentedRecord(
                        id=f"p1-{record.id}-{i:03d}",
                        text=text,
                        labels=record.labels,
                        source_id=record.id,
                        method="paraphrase_p1",
                        model=config.model,
                        prompt_fingerprint=fp,
                    ),
                    raw,
                    sink,
                )
        else:
            prompt = PARAPHRASE_P2_TEMPLATE.format(n=config.n, text=record.text)
            fp = _fingerprint(PARAPHRASE_SYSTEM_MESSAGE, prompt)
            response = client.chat_complete(
                ChatRequest(
                    model=config.model,
                    system_message=PARAPHRASE_SYSTEM_MESSAGE,
                    user_prompt=prompt,
                    temperature=DEFAULT_GENERATION_TEMPERATURE,
                    n_choices=1,
                )
            )
            for j, line in enumerate(_parse_lines(response.choices[0])):
                _emit(
                    AugmentedRecord(
                        id=f"p2-{record.id}-{j:03d}",
                        text=line,
                        labels=record.labels,
                        source_id=record.id,
                        method="paraphrase_p2",
                        model=config.model,
                        prompt_fingerprint=fp,
                    ),
                    raw,
                    sink,
                )
    if config.balance == "nbal":
        return _balance_nbal(raw, target_labels, config.target_per_class, rng)
    return raw


def _balance_nbal(
    records: list[AugmentedRecord], target_labels, per_class: int, rng: random.Random
) -> list[AugmentedRecord]:
    """Pick exactly per_class records for each target class, in target order.

    A record is attributed to the class it was selected for; a multi-label
    record selected for one class never counts toward another.
    """
    selected: list[AugmentedRecord] = []
    taken: set[str] = set()
    for label in target_labels:
        pool = [r for r in records if label in r.labels and r.id not in taken]
        if len(pool) < per_class:
            raise BalanceError(label, per_class, len(pool))
        shuffled = list(pool)
        rng.shuffle(shuffled)
        chosen = shuffled[:per_class]
        selected.extend(chosen)
        taken.update(r.id for r in chosen)
    return selected


def generate(
    target_labels,
    config: GenerationConfig,
    dataset: Dataset,
    client,
    seed: int = 0,
    sink: list | None = None,
) -> list[AugmentedRecord]:
    """Synthesize per_class new records per target class from a prompt.

    shots=0 sends the bare prompt; shots>0 appends that many seeded example
    texts from the class's train records. Each call asks for n sentences,
    so ceil(per_class / n) calls go out per class; over-generation is cut
    back to per_class by a seeded shuffle-then-take.
    """
    config.validate()
    rng = random.Random(seed)
    method = "zero_shot" if config.shots == 0 else "few_shot"
    prefix = "zs" if config.shots == 0 else "fs"
    out: list[AugmentedRecord] = []
    train_records = dataset.split("train")
    for label in target_labels:
        examples = None
        if config.shots > 0:
            pool = [r.text for r in train_records if label in r.labels]
            if len(pool) < config.shots:
                raise ValidationError(
                    f"label {label!r} has {len(pool)} train records, "
                    f"fewer than shots={config.shots}"
                )
            examples = rng.sample(pool, config.shots)
        prompt = generation_prompt(config.n, label, examples)
        fp = _fingerprint(GENERATION_SYSTEM_MESSAGE, prompt)
        calls = math.ceil(config.per_class / config.n)
        lines: list[str] = []
        for _ in range(calls):
            response = client.chat_complete(
                ChatRequest(
                    model=config.model,
                    system_message=GENERATION_SYSTEM_MESSAGE,
                    user_prompt=prompt,
                    temperature=DEFAULT_GENERATION_TEMPERATURE,
                    n_choices=1,
                )
            )
            lines.extend(_parse_lines(response.choices[0]))
        if len(lines) > config.per_class:
            shuffled = list(lines)
            rng.shuffle(shuffled)
            lines = shuffled[: config.per_class]
        for i, line in enumerate(lines):
            _emit(
                AugmentedRecord(
                    id=f"{prefix}-{_sanitize(label)}-{i:04d}",
                    text=line,
                    labels=frozenset({label}),
                    source_id=SYNTHETIC_SOURCE,
                    method=method,
                    model=config.model,
                    prompt_fingerprint=fp,
                ),
                out,
                sink,
            )
    return out


def backtranslate(
    dataset: Dataset,
    target_labels,
    languages: list[str],
    client,
    seed: int = 0,
    model: str = "",
    sink: list | None = None,
) -> list[AugmentedRecord]:
    """Round-trip every target-class train record through each language.

    Output is the concatenation over languages: one record per (source,
    language) with language_chain [en, L, en]. A round trip that returns
    the source text verbatim is kept and flagged identical=true. A failed
    translation skips that (record, language) with a warning.
    """
    if not languages:
        raise ConfigError("backtranslation needs at least one language")
    if "en" in languages:
        raise ConfigError("backtranslation languages must not include 'en'")
    unsupported = [lang for lang in languages if lang not in client.supported_languages]
    if unsupported:
        raise ConfigError(f"languages not supported by the client: {unsupported}")
    out: list[AugmentedRecord] = []
    eligible = _eligible(dataset, target_labels)
    for lang in languages:
        for record in eligible:
            try:
                forward = client.translate(
                    TranslationRequest(text=record.text, source_lang="en", target_lang=lang)
                )
                back = client.translate(
                    TranslationRequest(text=forward, source_lang=lang, target_lang="en")
                )
            except ProviderError as exc:
                logger.warning("skipping %s x %s: %s", record.id, lang, exc)
                continue
            meta = {"identical": True} if back == record.text else {}
            _emit(
                AugmentedRecord(
                    id=f"bt-{record.id}-{lang}",
                    text=back,
                    labels=record.labels,
                    source_id=record.id,
                    method="backtranslation",
                    model=model,
                    language_chain=("en", lang, "en"),
                    meta=meta,
                ),
                out,
                sink,
            )
    return out


def merge_into_training_set(
    dataset: Dataset, augmented: list[AugmentedRecord], seed: int = 0
) -> Dataset:
    """Original dataset plus augmented records as new train records.

    The merged train split is reshuffled with the seed; validation and test
    records pass through untouched, so augmentation can never leak into
    evaluation. Id collisions are resolved by suffixing, with a warning.
    """
    used = {r.id for r in dataset.records}
    converted: list[MultiLabelRecord] = []
    for aug in augmented:
        rid = aug.id
        if rid in used:
            k = 1
            while f"{rid}-dup{k}" in used:
                k += 1
            logger.warning("augmented id %r collides; renamed to %s-dup%d", rid, rid, k)
            rid = f"{rid}-dup{k}"
        used.add(rid)
        meta = {
            "method": aug.method,
            "source_id": aug.source_id,
            "model": aug.model,
            "prompt_fingerprint": aug.prompt_fingerprint,
        }
        if aug.language_chain:
            meta["language_chain"] = list(aug.language_chain)
        meta.update(aug.meta)
        converted.append(
            MultiLabelRecord(
                id=rid, text=aug.text, labels=aug.labels, split="train", meta=meta
            )
        )
    train = [r for r in dataset.records if r.split == "train"] + converted
    rng = random.Random(seed)
    rng.shuffle(train)
    others = [r for r in dataset.records if r.split != "train"]
    return Dataset(records=train + others, vocabulary=list(dataset.vocabulary))


def write_augmented(path: str | Path, records: list[AugmentedRecord]) -> None:
    """One JSON object per line, keys sorted, deterministic bytes."""
    with open(path, "w", encoding="utf-8") as fh:
        for r in records:
            obj = {
                "id": r.id,
                "text": r.text,
                "labels": sorted(r.labels),
                "source_id": r.source_id,
                "method": r.method,
                "model": r.model,
                "language_chain": list(r.language_chain),
                "prompt_fingerprint": r.prompt_fingerprint,
            }
            if r.meta:
                obj["meta"] = r.meta
            fh.write(json.dumps(obj, sort_keys=True, ensure_ascii=False) + "\n")


def load_augmented(path: str | Path) -> list[AugmentedRecord]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                out.append(
                    AugmentedRecord(
                        id=obj["id"],
                        text=obj["text"],
                        labels=frozenset(obj["labels"]),
                        source_id=obj["source_id"],
                        method=obj["method"],
                        model=obj.get("model", ""),
                        language_chain=tuple(obj.get("language_chain", ())),
                        prompt_fingerprint=obj.get("prompt_fingerprint", ""),
                        meta=obj.get("meta", {}),
                    )
                )
            except (ValueError, KeyError, TypeError) as exc:
                raise ValidationError(f"{path}:{lineno}: bad augmented record: {exc}") from exc
    return out
