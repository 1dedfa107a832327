"""Experiment configuration: one JSON file drives every CLI command.

The file names the dataset, how target classes are selected, the list of
augmentation plans, provider endpoints, classifier hyperparameters, a seed,
and an output directory. Credentials never appear in the file; a provider
section names an environment variable instead.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .classify import ClassifierSettings
from .corpus import SPLITS
from .errors import ConfigError

KNOWN_STRATEGIES = ("oversample", "paraphrase", "generate", "backtranslate")
PROVIDER_ROLES = ("chat", "translation", "embedding")

_NAME_RE = re.compile(r"^[A-Za-z0-9._-]+$")

_PLAN_PARAM_KEYS = {
    "oversample": {"factor"},
    "paraphrase": {"prompt_mode", "n", "balance", "target_per_class", "model"},
    "generate": {"shots", "n", "per_class", "model"},
    "backtranslate": {"languages", "model", "translator"},
}


@dataclass(frozen=True)
class ProviderConfig:
    base_url: str
    model: str = ""
    api_key_env: str | None = None
    requests_per_minute: float | None = None
    max_in_flight: int = 4


@dataclass(frozen=True)
class TargetSelection:
    """Either the k least-represented labels or an explicit label list."""

    k: int | None = None
    labels: tuple[str, ...] = ()
    splits: tuple[str, ...] | None = None


@dataclass(frozen=True)
class PlanSpec:
    name: str
    strategy: str
    params: dict


@dataclass
class ExperimentConfig:
    dataset_path: str
    dataset_format: str
    seed: int
    label_file: str | None = None
    targets: TargetSelection = field(default_factory=TargetSelection)
    plans: list[PlanSpec] = field(default_factory=list)
    quality_enabled: bool = True
    classifier: ClassifierSettings = field(default_factory=ClassifierSettings)
    output_dir: str = "out"
    providers: dict[str, ProviderConfig] = field(default_factory=dict)

    def plan(self, name: str) -> PlanSpec:
        for plan in self.plans:
            if plan.name == name:
                return plan
        raise ConfigError(
            f"no plan named {name!r}; configured plans: {[p.name for p in self.plans]}"
        )


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise ConfigError(f"{where}: missing required key {key!r}")
    return obj[key]


def _check_keys(obj: dict, allowed: set[str], where: str) -> None:
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise ConfigError(f"{where}: unknown keys {unknown}")


def _parse_targets(obj: dict) -> TargetSelection:
    _check_keys(obj, {"k", "labels", "splits"}, "targets")
    k = obj.get("k")
    labels = obj.get("labels") or []
    if (k is None) == (not labels):
        raise ConfigError("targets: give exactly one of 'k' or 'labels'")
    if k is not None and (not isinstance(k, int) or isinstance(k, bool) or k < 1):
        raise ConfigError("targets.k must be a positive integer")
    if labels and not all(isinstance(x, str) and x for x in labels):
        raise ConfigError("targets.labels must be non-empty strings")
    splits = obj.get("splits")
    if splits is not None:
        bad = [s for s in splits if s not in SPLITS]
        if bad:
            raise ConfigError(f"targets.splits: unknown splits {bad}")
        splits = tuple(splits)
    return TargetSelection(k=k, labels=tuple(labels), splits=splits)


def _parse_plan(obj: dict, index: int, seen: set[str]) -> PlanSpec:
    where = f"plans[{index}]"
    if not isinstance(obj, dict):
        raise ConfigError(f"{where}: each plan must be an object")
    name = _require(obj, "name", where)
    strategy = _require(obj, "strategy", where)
    if not isinstance(name, str) or not _NAME_RE.match(name):
        raise ConfigError(f"{where}: plan name must match {_NAME_RE.pattern}")
    if name in seen:
        raise ConfigError(f"{where}: duplicate plan name {name!r}")
    seen.add(name)
    if strategy not in KNOWN_STRATEGIES:
        raise ConfigError(
            f"{where}: unknown strategy {strategy!r}; known: {list(KNOWN_STRATEGIES)}"
        )
    params = {k: v for k, v in obj.items() if k not in ("name", "strategy")}
    _check_keys(params, _PLAN_PARAM_KEYS[strategy], f"{where} ({strategy})")
    return PlanSpec(name=name, strategy=strategy, params=params)


def _parse_provider(obj: dict, role: str) -> ProviderConfig:
    where = f"providers.{role}"
    _check_keys(
        obj,
        {"base_url", "model", "api_key_env", "requests_per_minute", "max_in_flight"},
        where,
    )
    base_url = _require(obj, "base_url", where)
    if not isinstance(base_url, str) or not base_url:
        raise ConfigError(f"{where}.base_url must be a non-empty string")
    return ProviderConfig(
        base_url=base_url,
        model=obj.get("model", ""),
        api_key_env=obj.get("api_key_env"),
        requests_per_minute=obj.get("requests_per_minute"),
        max_in_flight=obj.get("max_in_flight", 4),
    )


def _parse_classifier(obj: dict) -> ClassifierSettings:
    fields = {"learning_rate", "l2_lambda", "epochs", "seed", "min_df", "lowercase"}
    _check_keys(obj, fields, "classifier")
    try:
        return ClassifierSettings(**obj)
    except TypeError as exc:
        raise ConfigError(f"classifier: {exc}") from exc


def parse_config(obj: dict, base_dir: Path | None = None) -> ExperimentConfig:
    """Build an ExperimentConfig from a parsed JSON object.

    Relative dataset paths are resolved against base_dir when given (the
    config file's directory), so a config works regardless of cwd.
    """
    if not isinstance(obj, dict):
        raise ConfigError("config root must be a JSON object")
    _check_keys(
        obj,
        {"dataset", "targets", "plans", "quality", "classifier", "seed",
         "output_dir", "providers"},
        "config",
    )
    dataset = _require(obj, "dataset", "config")
    _check_keys(dataset, {"path", "format", "label_file"}, "dataset")
    path = _require(dataset, "path", "dataset")
    fmt = _require(dataset, "format", "dataset")
    if fmt not in ("jsonl", "tsv"):
        raise ConfigError(f"dataset.format must be 'jsonl' or 'tsv', got {fmt!r}")
    seed = _require(obj, "seed", "config")
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ConfigError("seed must be an integer")

    label_file = dataset.get("label_file")
    if base_dir is not None:
        path = str((base_dir / path).resolve()) if not Path(path).is_absolute() else path
        if label_file and not Path(label_file).is_absolute():
            label_file = str((base_dir / label_file).resolve())

    targets = _parse_targets(obj.get("targets", {"k": 5}))
    seen: set[str] = set()
    plans = [_parse_plan(p, i, seen) for i, p in enumerate(obj.get("plans", []))]

    quality = obj.get("quality", {})
    _check_keys(quality, {"enabled"}, "quality")
    quality_enabled = bool(quality.get("enabled", True))

    providers = {}
    raw_providers = obj.get("providers", {})
    _check_keys(raw_providers, set(PROVIDER_ROLES), "providers")
    for role, section in raw_providers.items():
        providers[role] = _parse_provider(section, role)

    return ExperimentConfig(
        dataset_path=path,
        dataset_format=fmt,
        seed=seed,
        label_file=label_file,
        targets=targets,
        plans=plans,
        quality_enabled=quality_enabled,
        classifier=_parse_classifier(obj.get("classifier", {})),
        output_dir=obj.get("output_dir", "out"),
        providers=providers,
    )


def load_config(path: str | Path) -> ExperimentConfig:
    path = Path(path)
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"config file not found: {path}") from exc
    except ValueError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
    return parse_config(obj, base_dir=path.parent)
