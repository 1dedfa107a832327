"""Command-line front end.

Subcommands cover the full experiment loop: dataset statistics, running an
augmentation plan, scoring the generated text, training and comparing the
bundled classifier, and collecting everything into one markdown report.

Exit codes: 0 success, 2 configuration or validation problem, 3 provider
failure, 4 output I/O failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .augment import (
    SYNTHETIC_SOURCE,
    GenerationConfig,
    ParaphraseConfig,
    backtranslate,
    generate,
    load_augmented,
    merge_into_training_set,
    oversample,
    paraphrase,
    write_augmented,
)
from .classify import (
    CLASSIFICATION_CSV_HEADER,
    classification_report_rows,
    f1_report,
    import_external_predictions,
    label_matrix,
    render_classification_csv,
    run_eval,
)
from .config import (
    ExperimentConfig,
    PlanSpec,
    ProviderConfig,
    TargetSelection,
    load_config,
)
from .corpus import (
    SPLITS,
    Dataset,
    label_correlation,
    label_counts,
    load_dataset,
    select_least_represented,
)
from .errors import ConfigError, ProviderError, TextaugError
from .providers import (
    HttpChatClient,
    HttpEmbeddingClient,
    HttpTranslationClient,
    MockProvider,
)
from .quality import (
    QUALITY_CSV_HEADER,
    SentencePair,
    evaluate_set,
    quality_report_rows,
    render_quality_csv,
)

logger = logging.getLogger(__name__)

MANIFEST_VERSION = 1


# ---------------------------------------------------------------------------
# argument parsing

def _global_options() -> argparse.ArgumentParser:
    # Shared by the root parser and every subparser so the flags are accepted
    # both before and after the subcommand. SUPPRESS keeps a subparser from
    # clobbering a value that was given before the subcommand.
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument(
        "--config", default=argparse.SUPPRESS, help="experiment config JSON file"
    )
    parent.add_argument(
        "--seed",
        type=int,
        default=argparse.SUPPRESS,
        help="override the config seed",
    )
    parent.add_argument(
        "--mock",
        action="store_true",
        default=argparse.SUPPRESS,
        help="use the offline deterministic provider instead of HTTP",
    )
    parent.add_argument(
        "--out", default=argparse.SUPPRESS, help="override the output directory"
    )
    return parent


def build_parser() -> argparse.ArgumentParser:
    common = _global_options()
    parser = argparse.ArgumentParser(
        prog="textaug",
        description="Augment under-represented classes of a multi-label text "
        "dataset and measure what it buys you.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p_stats = sub.add_parser(
        "stats", parents=[common], help="label counts and co-occurrence"
    )
    p_stats.add_argument("--dataset", help="dataset file (else taken from --config)")
    p_stats.add_argument(
        "--format", choices=("jsonl", "tsv"), help="dataset format (default jsonl)"
    )
    p_stats.add_argument("--label-file", help="label vocabulary file (tsv needs one)")
    p_stats.add_argument(
        "--split",
        action="append",
        choices=SPLITS,
        help="restrict counts to this split (repeatable)",
    )
    p_stats.add_argument(
        "--k", type=int, help="print only the k least-represented labels"
    )

    p_aug = sub.add_parser(
        "augment", parents=[common], help="run one augmentation plan"
    )
    p_aug.add_argument("--plan", help="plan name from the config")
    p_aug.add_argument(
        "--from-manifest",
        help="re-run a previous augment invocation from its manifest.json",
    )

    p_quality = sub.add_parser(
        "quality", parents=[common], help="score generated text against sources"
    )
    p_quality.add_argument("--plan", help="plan name from the config")

    p_train = sub.add_parser(
        "train-eval",
        parents=[common],
        help="train the bundled classifier with and without the augmentation",
    )
    p_train.add_argument("--plan", help="plan name from the config")
    p_train.add_argument(
        "--external-predictions",
        help="JSONL of {id, labels} test predictions from an external model",
    )

    sub.add_parser(
        "report", parents=[common], help="collect plan outputs into one markdown file"
    )
    return parser


def _opt(args: argparse.Namespace, name: str, default=None):
    return getattr(args, name, default)


# ---------------------------------------------------------------------------
# shared plumbing

def _load_experiment(args: argparse.Namespace) -> ExperimentConfig:
    cfg_path = _opt(args, "config")
    if not cfg_path:
        raise ConfigError("this command needs --config")
    cfg = load_config(cfg_path)
    seed = _opt(args, "seed")
    if seed is not None:
        cfg.seed = seed
    out = _opt(args, "out")
    if out is not None:
        cfg.output_dir = str(out)
    return cfg


def _read_dataset(path, fmt: str, label_file=None) -> Dataset:
    # Unreadable input is a configuration problem (exit 2); exit 4 is
    # reserved for failures writing our own outputs.
    try:
        return load_dataset(path, fmt, label_file=label_file)
    except OSError as exc:
        raise ConfigError(f"cannot read dataset: {exc}") from exc


def _dataset_from_config(cfg: ExperimentConfig) -> Dataset:
    return _read_dataset(cfg.dataset_path, cfg.dataset_format, cfg.label_file)


def _resolve_targets(cfg: ExperimentConfig, dataset: Dataset) -> list[str]:
    sel = cfg.targets
    if sel.labels:
        missing = [lab for lab in sel.labels if lab not in dataset.vocabulary]
        if missing:
            raise ConfigError(f"target labels not in the vocabulary: {missing}")
        return list(sel.labels)
    if not sel.k:
        raise ConfigError("config.targets must set either k or labels")
    splits = list(sel.splits) if sel.splits else None
    stats = label_counts(dataset, splits=splits)
    try:
        return select_least_represented(stats, sel.k)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


class ProviderSet:
    """Build the per-role clients an execution needs, lazily.

    Under --mock one seeded offline provider serves every role. Otherwise
    clients come from the config's providers table; translation falls back
    to prompting the chat provider when no dedicated endpoint is set.
    """

    def __init__(self, config: ExperimentConfig, mock: bool):
        self._config = config
        self._mock = MockProvider(config.seed) if mock else None

    def _section(self, role: str) -> ProviderConfig | None:
        return self._config.providers.get(role)

    def _common_kwargs(self, section: ProviderConfig) -> dict:
        return {
            "api_key_env": section.api_key_env,
            "requests_per_minute": section.requests_per_minute,
            "max_in_flight": section.max_in_flight,
        }

    def chat(self):
        if self._mock is not None:
            return self._mock
        section = self._section("chat")
        if section is None:
            raise ConfigError(
                "no chat provider configured; add providers.chat or pass --mock"
            )
        if not section.model:
            raise ConfigError("providers.chat.model is required")
        return HttpChatClient(
            section.base_url, model=section.model, **self._common_kwargs(section)
        )

    def translation(self, preference: str | None = None):
        if self._mock is not None:
            return self._mock
        if preference == "chat":
            return self.chat()
        section = self._section("translation")
        if section is not None:
            return HttpTranslationClient(
                section.base_url, **self._common_kwargs(section)
            )
        if preference == "translation":
            raise ConfigError(
                "plan asks for a dedicated translation provider but "
                "providers.translation is not configured"
            )
        return self.chat()

    def embedding(self):
        # May be absent: quality reporting degrades to lexical metrics.
        if self._mock is not None:
            return self._mock
        section = self._section("embedding")
        if section is None:
            return None
        if not section.model:
            raise ConfigError("providers.embedding.model is required")
        return HttpEmbeddingClient(
            section.base_url, model=section.model, **self._common_kwargs(section)
        )

    def chat_model_name(self) -> str:
        if self._mock is not None:
            return "mock-chat"
        section = self._section("chat")
        if section is None or not section.model:
            raise ConfigError("providers.chat.model is required")
        return section.model

    def translation_model_name(self, preference: str | None) -> str:
        if self._mock is not None:
            return "mock-translate"
        if preference == "chat":
            return self.chat_model_name()
        section = self._section("translation")
        if section is not None:
            return section.model or "translation-api"
        return self.chat_model_name()


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def _write_json(path: Path, obj) -> None:
    _write_text(
        path, json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    )


def _int_param(params: dict, key: str, default: int, where: str) -> int:
    value = params.get(key, default)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{where}.{key} must be an integer, got {value!r}")
    return value


def _str_param(params: dict, key: str, default: str, where: str) -> str:
    value = params.get(key, default)
    if not isinstance(value, str):
        raise ConfigError(f"{where}.{key} must be a string, got {value!r}")
    return value


# ---------------------------------------------------------------------------
# augment

def _run_plan(
    plan: PlanSpec,
    dataset: Dataset,
    targets: list[str],
    cfg: ExperimentConfig,
    providers: ProviderSet,
    sink: list,
) -> tuple[list, dict]:
    """Execute one plan; returns (records, resolved params for the manifest)."""
    params = plan.params
    where = f"plan {plan.name!r}"

    if plan.strategy == "oversample":
        factor = _int_param(params, "factor", 2, where)
        records = oversample(dataset, targets, factor, cfg.seed)
        return records, {"factor": factor}

    if plan.strategy == "paraphrase":
        model = _str_param(params, "model", "", where) or providers.chat_model_name()
        pconf = ParaphraseConfig(
            prompt_mode=_str_param(params, "prompt_mode", "p1_iterative", where),
            n=_int_param(params, "n", 1, where),
            balance=_str_param(params, "balance", "nmax", where),
            target_per_class=_int_param(params, "target_per_class", 0, where),
            model=model,
        )
        records = paraphrase(dataset, targets, pconf, providers.chat(), cfg.seed, sink)
        return records, {
            "prompt_mode": pconf.prompt_mode,
            "n": pconf.n,
            "balance": pconf.balance,
            "target_per_class": pconf.target_per_class,
            "model": pconf.model,
        }

    if plan.strategy == "generate":
        model = _str_param(params, "model", "", where) or providers.chat_model_name()
        gconf = GenerationConfig(
            shots=_int_param(params, "shots", 0, where),
            n=_int_param(params, "n", 6, where),
            per_class=_int_param(params, "per_class", 10, where),
            model=model,
        )
        records = generate(targets, gconf, dataset, providers.chat(), cfg.seed, sink)
        return records, {
            "shots": gconf.shots,
            "n": gconf.n,
            "per_class": gconf.per_class,
            "model": gconf.model,
        }

    if plan.strategy == "backtranslate":
        languages = params.get("languages")
        if not isinstance(languages, list) or not all(
            isinstance(x, str) for x in languages
        ):
            raise ConfigError(f"{where}.languages must be a list of language codes")
        preference = params.get("translator")
        if preference not in (None, "translation", "chat"):
            raise ConfigError(
                f"{where}.translator must be 'translation' or 'chat', got {preference!r}"
            )
        model = _str_param(params, "model", "", where) or providers.translation_model_name(
            preference
        )
        client = providers.translation(preference)
        records = backtranslate(
            dataset, targets, languages, client, cfg.seed, model=model, sink=sink
        )
        resolved = {"languages": list(languages), "model": model}
        if preference is not None:
            resolved["translator"] = preference
        return records, resolved

    raise ConfigError(f"unknown strategy {plan.strategy!r} in {where}")


def _build_manifest(
    cfg: ExperimentConfig,
    plan: PlanSpec,
    resolved_params: dict,
    targets: list[str],
    mock: bool,
    records: list,
) -> dict:
    providers = {}
    if not mock:
        for role in sorted(cfg.providers):
            section = cfg.providers[role]
            providers[role] = {
                "base_url": section.base_url,
                "model": section.model,
                "api_key_env": section.api_key_env,
                "requests_per_minute": section.requests_per_minute,
                "max_in_flight": section.max_in_flight,
            }
    by_method: dict[str, int] = {}
    for rec in records:
        by_method[rec.method] = by_method.get(rec.method, 0) + 1
    # Deliberately no timestamps and no output_dir: the manifest must be
    # byte-identical across reruns and relocatable between output trees.
    return {
        "version": MANIFEST_VERSION,
        "command": "augment",
        "mock": mock,
        "seed": cfg.seed,
        "dataset": {
            "path": str(cfg.dataset_path),
            "format": cfg.dataset_format,
            "label_file": str(cfg.label_file) if cfg.label_file else None,
        },
        "target_labels": list(targets),
        "plan": {
            "name": plan.name,
            "strategy": plan.strategy,
            "params": resolved_params,
        },
        "providers": providers,
        "counts": {"records": len(records), "by_method": by_method},
    }


def _experiment_from_manifest(args: argparse.Namespace) -> tuple[ExperimentConfig, PlanSpec, bool]:
    path = Path(_opt(args, "from_manifest"))
    try:
        obj = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read manifest: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"manifest {path} is not valid JSON: {exc}") from exc
    try:
        plan = PlanSpec(
            name=obj["plan"]["name"],
            strategy=obj["plan"]["strategy"],
            params=dict(obj["plan"]["params"]),
        )
        dataset = obj["dataset"]
        providers = {
            role: ProviderConfig(**section)
            for role, section in obj.get("providers", {}).items()
        }
        cfg = ExperimentConfig(
            dataset_path=dataset["path"],
            dataset_format=dataset["format"],
            seed=int(obj["seed"]),
            label_file=dataset.get("label_file"),
            targets=TargetSelection(labels=tuple(obj["target_labels"])),
            plans=[plan],
            providers=providers,
        )
        mock = bool(obj["mock"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"manifest {path} is malformed: {exc}") from exc
    seed = _opt(args, "seed")
    if seed is not None:
        cfg.seed = seed
    cfg.output_dir = str(_opt(args, "out") or "out")
    if _opt(args, "mock", False):
        mock = True
    return cfg, plan, mock


def cmd_augment(args: argparse.Namespace) -> int:
    if _opt(args, "from_manifest"):
        if _opt(args, "plan"):
            raise ConfigError("--plan and --from-manifest are mutually exclusive")
        cfg, plan, mock = _experiment_from_manifest(args)
    else:
        cfg = _load_experiment(args)
        plan_name = _opt(args, "plan")
        if not plan_name:
            raise ConfigError("augment needs --plan (or --from-manifest)")
        plan = cfg.plan(plan_name)
        mock = bool(_opt(args, "mock", False))

    dataset = _dataset_from_config(cfg)
    targets = _resolve_targets(cfg, dataset)
    providers = ProviderSet(cfg, mock)
    out_dir = Path(cfg.output_dir) / plan.name

    sink: list = []
    try:
        records, resolved = _run_plan(plan, dataset, targets, cfg, providers, sink)
    except ProviderError:
        if sink:
            partial = out_dir / "partial" / "augmented_partial.jsonl"
            partial.parent.mkdir(parents=True, exist_ok=True)
            write_augmented(partial, sink)
            print(
                f"provider failure: kept {len(sink)} partial records in {partial}",
                file=sys.stderr,
            )
        raise

    out_dir.mkdir(parents=True, exist_ok=True)
    write_augmented(out_dir / "augmented.jsonl", records)
    manifest = _build_manifest(cfg, plan, resolved, targets, mock, records)
    _write_json(out_dir / "manifest.json", manifest)
    print(f"{plan.name}: wrote {len(records)} augmented records")
    return 0


# ---------------------------------------------------------------------------
# quality

def cmd_quality(args: argparse.Namespace) -> int:
    cfg = _load_experiment(args)
    plan_name = _opt(args, "plan")
    if not plan_name:
        raise ConfigError("quality needs --plan")
    plan = cfg.plan(plan_name)
    mock = bool(_opt(args, "mock", False))
    out_dir = Path(cfg.output_dir) / plan.name
    aug_path = out_dir / "augmented.jsonl"
    if not aug_path.exists():
        raise ConfigError(f"no augmented output at {aug_path}; run augment first")

    augmented = load_augmented(aug_path)
    dataset = _dataset_from_config(cfg)
    by_id = {rec.id: rec for rec in dataset.records}

    pairs: list[SentencePair] = []
    synthetic = 0
    missing = 0
    for rec in augmented:
        if rec.source_id == SYNTHETIC_SOURCE:
            synthetic += 1
            continue
        source = by_id.get(rec.source_id)
        if source is None:
            missing += 1
            logger.warning(
                "augmented record %s references unknown source %s",
                rec.id,
                rec.source_id,
            )
            continue
        pairs.append(SentencePair(source.text, rec.text, len(pairs)))

    reports = []
    if pairs:
        embed_client = (
            ProviderSet(cfg, mock).embedding() if cfg.quality_enabled else None
        )
        reports = [evaluate_set(plan.name, pairs, embed_client)]
    else:
        print(f"{plan.name}: no reference/generated pairs to score", file=sys.stderr)

    _write_text(out_dir / "quality.csv", render_quality_csv(reports))
    _write_json(
        out_dir / "quality.json",
        {
            "rows": quality_report_rows(reports),
            "pairs_scored": len(pairs),
            "synthetic_excluded": synthetic,
            "missing_source": missing,
        },
    )
    print(f"{plan.name}: scored {len(pairs)} pairs ({synthetic} synthetic excluded)")
    return 0


# ---------------------------------------------------------------------------
# train-eval

def cmd_train_eval(args: argparse.Namespace) -> int:
    cfg = _load_experiment(args)
    plan_name = _opt(args, "plan")
    if not plan_name:
        raise ConfigError("train-eval needs --plan")
    plan = cfg.plan(plan_name)
    out_dir = Path(cfg.output_dir) / plan.name
    dataset = _dataset_from_config(cfg)
    targets = _resolve_targets(cfg, dataset)
    labels = sorted(dataset.vocabulary)

    external = _opt(args, "external_predictions")
    if external:
        # Grade an outside model's test predictions against the same baseline.
        baseline, _ = run_eval(
            dataset, dataset, targets, cfg.classifier, method_name=plan.name
        )
        predictions = import_external_predictions(external, dataset)
        gold = label_matrix(dataset.split("test"), labels)
        report = f1_report(
            predictions,
            gold,
            labels,
            targets,
            baseline,
            method_name=plan.name,
            model_name="external",
        )
        reports = [baseline, report]
    else:
        aug_path = out_dir / "augmented.jsonl"
        if not aug_path.exists():
            raise ConfigError(f"no augmented output at {aug_path}; run augment first")
        augmented = load_augmented(aug_path)
        merged = merge_into_training_set(dataset, augmented, cfg.seed)
        baseline, aug_report = run_eval(
            dataset, merged, targets, cfg.classifier, method_name=plan.name
        )
        reports = [baseline, aug_report]

    csv_text = render_classification_csv(reports)
    _write_text(out_dir / "classification.csv", csv_text)
    _write_json(
        out_dir / "classification.json",
        {"rows": classification_report_rows(reports), "target_labels": list(targets)},
    )
    print(csv_text, end="")
    return 0


# ---------------------------------------------------------------------------
# stats

def cmd_stats(args: argparse.Namespace) -> int:
    explicit = _opt(args, "dataset")
    if explicit:
        fmt = _opt(args, "format") or "jsonl"
        dataset = _read_dataset(explicit, fmt, _opt(args, "label_file"))
    else:
        cfg = _load_experiment(args)
        dataset = _dataset_from_config(cfg)

    splits = _opt(args, "split") or None
    stats = label_counts(dataset, splits=splits)

    k = _opt(args, "k")
    if k is not None:
        try:
            chosen = select_least_represented(stats, k)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        by_label = {s.label: s for s in stats}
        lines = ["label,count"]
        lines += [f"{label},{by_label[label].count}" for label in chosen]
        text = "\n".join(lines) + "\n"
    else:
        lines = ["label,count,frequency"]
        lines += [f"{s.label},{s.count},{s.frequency:.6f}" for s in stats]
        corr = label_correlation(dataset)
        corr_lines = ["label," + ",".join(corr.labels)]
        for label, row in zip(corr.labels, corr.values):
            corr_lines.append(label + "," + ",".join("%.4f" % v for v in row))
        text = "\n".join(lines) + "\n\n" + "\n".join(corr_lines) + "\n"

    out = _opt(args, "out")
    if out:
        path = Path(out) / "stats.csv"
        _write_text(path, text)
        print(f"wrote {path}")
    else:
        print(text, end="")
    return 0


# ---------------------------------------------------------------------------
# report

def _cell(value, fmt: str = "%.4f") -> str:
    if value is None:
        return ""
    return fmt % value


def _word_cell(value) -> str:
    return "" if value is None else str(round(value))


def _quality_row_cells(row: dict) -> list[str]:
    return [
        row.get("method", ""),
        _word_cell(row.get("avg_word_ref")),
        _word_cell(row.get("avg_word_gen")),
        _cell(row.get("word_ratio")),
        _cell(row.get("avg_jaccard")),
        _cell(row.get("avg_entropy_ratio")),
        _cell(row.get("ttr_ratio")),
        _cell(row.get("avg_cosine")),
        _cell(row.get("avg_bertscore_f1")),
    ]


def _classification_row_cells(row: dict) -> list[str]:
    return [
        row.get("method", ""),
        row.get("model", ""),
        _cell(row.get("f1_macro_all")),
        _cell(row.get("pct_change_all"), "%.2f"),
        _cell(row.get("f1_macro_augmented")),
        _cell(row.get("pct_change_augmented"), "%.2f"),
        _cell(row.get("f1_macro_other")),
        _cell(row.get("pct_change_other"), "%.2f"),
    ]


def _markdown_table(header_csv: str, rows: list[list[str]]) -> list[str]:
    headers = header_csv.split(",")
    lines = [
        "| " + " | ".join(headers) + " |",
        "|" + "---|" * len(headers),
    ]
    for cells in rows:
        lines.append("| " + " | ".join(cells) + " |")
    return lines


def cmd_report(args: argparse.Namespace) -> int:
    cfg = _load_experiment(args)
    out_root = Path(cfg.output_dir)
    quality_rows: list[dict] = []
    class_rows: list[dict] = []
    notes: list[str] = []
    seen_baseline = False

    for plan in sorted(cfg.plans, key=lambda p: p.name):
        plan_dir = out_root / plan.name
        q_path = plan_dir / "quality.json"
        if q_path.exists():
            obj = json.loads(q_path.read_text(encoding="utf-8"))
            quality_rows.extend(obj.get("rows", []))
            if obj.get("synthetic_excluded"):
                notes.append(
                    f"{plan.name}: {obj['synthetic_excluded']} synthetic records have "
                    "no source text and were excluded from pair metrics"
                )
            if obj.get("missing_source"):
                notes.append(
                    f"{plan.name}: {obj['missing_source']} records referenced "
                    "unknown source ids and were skipped"
                )
        else:
            notes.append(f"{plan.name}: quality results missing")
        c_path = plan_dir / "classification.json"
        if c_path.exists():
            obj = json.loads(c_path.read_text(encoding="utf-8"))
            for row in obj.get("rows", []):
                if row.get("method") == "baseline":
                    if seen_baseline:
                        continue
                    seen_baseline = True
                class_rows.append(row)
        else:
            notes.append(f"{plan.name}: classification results missing")

    lines = ["# Augmentation results", ""]
    if quality_rows:
        lines += ["## Generated-text quality", ""]
        lines += _markdown_table(
            QUALITY_CSV_HEADER, [_quality_row_cells(r) for r in quality_rows]
        )
        lines.append("")
    if class_rows:
        lines += ["## Classification impact", ""]
        lines += _markdown_table(
            CLASSIFICATION_CSV_HEADER,
            [_classification_row_cells(r) for r in class_rows],
        )
        lines.append("")
    if not quality_rows and not class_rows:
        lines += ["_No completed plan outputs found._", ""]
    if notes:
        lines += ["## Notes", ""]
        lines += [f"- {note}" for note in notes]
        lines.append("")

    report_path = out_root / "report.md"
    _write_text(report_path, "\n".join(lines))
    print(f"wrote {report_path}")
    return 0


# ---------------------------------------------------------------------------
# entry

_COMMANDS = {
    "stats": cmd_stats,
    "augment": cmd_augment,
    "quality": cmd_quality,
    "train-eval": cmd_train_eval,
    "report": cmd_report,
}


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return 0
        return code if isinstance(code, int) else 2
    try:
        return _COMMANDS[args.command](args)
    except ProviderError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except TextaugError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


def entrypoint() -> None:
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    entrypoint()
