"""Lexical-diversity and semantic-fidelity metrics over sentence pairs.

A pair holds one original (reference) text and one augmented (generated)
text. Scoring samples every fourth pair, computes per-pair metrics, and
aggregates to one report row per augmentation method. All lexical metrics
run on whitespace word tokens; embedding metrics use whatever token
granularity the embedding provider returns.
"""

from __future__ import annotations

import json
import logging
import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import kernels
from ._text import tokenize
from .errors import ProtocolError, ProviderError, UndefinedMetricError, ValidationError

logger = logging.getLogger("textaug.quality")

COSINE_EPS = 1e-8
ENTROPY_EPS = 1e-9

# Rendered header: one row per augmentation method, lexical then semantic.
QUALITY_CSV_HEADER = (
    "Data aug.,Word Original,Word Generated,Word Ratio,Jaccard Dissimilarity,"
    "Entropy,TTR Ratio,Cosine Similarity,Bertscore-F1"
)


@dataclass
class SentencePair:
    reference: str
    generated: str
    pair_index: int

    def __post_init__(self):
        if not self.reference or not self.generated:
            raise ValidationError("both pair texts must be non-empty")
        if self.pair_index < 0:
            raise ValidationError("pair_index must be >= 0")


@dataclass
class PairScore:
    word_count_ref: int
    word_count_gen: int
    jaccard_dissimilarity: float
    entropy_ratio: float
    cosine_similarity: float | None = None
    bertscore_f1: float | None = None
    notes: tuple[str, ...] = ()


@dataclass
class SetQualityReport:
    method_name: str
    avg_word_ref: float
    avg_word_gen: float
    word_ratio: float
    avg_jaccard: float
    avg_entropy_ratio: float
    ttr_ratio: float
    avg_cosine: float | None
    avg_bertscore_f1: float | None
    n_pairs_scored: int
    notes: tuple[str, ...] = ()


def sample_pairs(pairs: list[SentencePair]) -> list[SentencePair]:
    """Every fourth pair, 0-based, order preserved."""
    return [p for i, p in enumerate(pairs) if i % 4 == 0]


def jaccard_dissimilarity(a: str, b: str) -> float:
    """1 - |A intersect B| / |A union B| over token sets; both empty -> 0."""
    sa, sb = set(tokenize(a)), set(tokenize(b))
    union = sa | sb
    if not union:
        return 0.0
    return 1.0 - len(sa & sb) / len(union)


def entropy(text: str) -> float:
    """Shannon entropy in bits of the token distribution; no tokens -> 0."""
    tokens = tokenize(text)
    if not tokens:
        return 0.0
    n = len(tokens)
    counts = Counter(tokens)
    return -sum((c / n) * math.log2(c / n) for c in counts.values())


def entropy_ratio(pair: SentencePair) -> tuple[float, tuple[str, ...]]:
    """H(generated)/H(reference) with the zero-entropy conventions.

    Both zero -> 1.0; reference-only zero -> generated entropy divided by a
    tiny epsilon, and the guard is reported in the returned notes.
    """
    h_ref = entropy(pair.reference)
    h_gen = entropy(pair.generated)
    if h_ref == 0.0:
        if h_gen == 0.0:
            return 1.0, ()
        return h_gen / ENTROPY_EPS, ("entropy_ratio_guarded",)
    return h_gen / h_ref, ()


def ttr(texts: list[str]) -> float:
    """Type-token ratio over the concatenation of all texts."""
    tokens = []
    for text in texts:
        tokens.extend(tokenize(text))
    if not tokens:
        raise UndefinedMetricError("type-token ratio needs at least one token")
    return len(set(tokens)) / len(tokens)


def ttr_ratio(generated_set: list[str], reference_set: list[str]) -> float:
    return ttr(generated_set) / ttr(reference_set)


def cosine_similarity(a, b) -> float:
    """Epsilon-guarded cosine: dot / (max(|a|,eps) * max(|b|,eps))."""
    a = [float(v) for v in a]
    b = [float(v) for v in b]
    if len(a) != len(b):
        raise ValueError(f"vector dimensions differ: {len(a)} vs {len(b)}")
    dot = math.fsum(x * y for x, y in zip(a, b))
    norm_a = math.sqrt(math.fsum(x * x for x in a))
    norm_b = math.sqrt(math.fsum(y * y for y in b))
    return dot / (max(norm_a, COSINE_EPS) * max(norm_b, COSINE_EPS))


def bertscore_f1(ref_tokens, gen_tokens) -> float:
    """Greedy-match F1 between two (token, vector) lists."""
    if not ref_tokens or not gen_tokens:
        raise UndefinedMetricError("token-level score needs non-empty token lists")
    ref = np.ascontiguousarray([vec for _, vec in ref_tokens], dtype=np.float64)
    gen = np.ascontiguousarray([vec for _, vec in gen_tokens], dtype=np.float64)
    _, _, f1 = kernels.bertscore_scores(ref, gen, COSINE_EPS)
    return f1


def evaluate_set(method_name: str, pairs: list[SentencePair], embed_client) -> SetQualityReport:
    """Score a method's pairs and aggregate to one report row.

    Embedding metrics need one batched embed call per side; if the provider
    fails (or no client is given) those two fields come back None and the
    report carries a note instead of failing the lexical half.
    """
    if not pairs:
        raise ValidationError("evaluate_set needs at least one pair")
    sampled = sample_pairs(pairs)

    ref_results = gen_results = None
    notes: tuple[str, ...] = ()
    if embed_client is None:
        notes = ("embeddings_skipped_no_client",)
    else:
        try:
            ref_results = embed_client.embed([p.reference for p in sampled], with_tokens=True)
            gen_results = embed_client.embed([p.generated for p in sampled], with_tokens=True)
        except (ProviderError, ProtocolError, OSError) as exc:
            # provider failure must not kill the lexical half of the report
            logger.warning("embedding provider failed; semantic fields omitted: %s", exc)
            ref_results = gen_results = None
            notes = ("embeddings_unavailable",)

    scores: list[PairScore] = []
    for i, pair in enumerate(sampled):
        ratio, pair_notes = entropy_ratio(pair)
        cos = bert = None
        if ref_results is not None:
            cos = cosine_similarity(
                ref_results[i].sentence_vector, gen_results[i].sentence_vector
            )
            bert = bertscore_f1(ref_results[i].token_vectors, gen_results[i].token_vectors)
        scores.append(
            PairScore(
                word_count_ref=len(tokenize(pair.reference)),
                word_count_gen=len(tokenize(pair.generated)),
                jaccard_dissimilarity=jaccard_dissimilarity(pair.reference, pair.generated),
                entropy_ratio=ratio,
                cosine_similarity=cos,
                bertscore_f1=bert,
                notes=pair_notes,
            )
        )

    n = len(scores)
    avg_word_ref = sum(s.word_count_ref for s in scores) / n
    avg_word_gen = sum(s.word_count_gen for s in scores) / n
    if any(s.notes for s in scores):
        notes = notes + ("entropy_ratio_guarded",)
    return SetQualityReport(
        method_name=method_name,
        avg_word_ref=avg_word_ref,
        avg_word_gen=avg_word_gen,
        word_ratio=avg_word_gen / avg_word_ref,
        avg_jaccard=sum(s.jaccard_dissimilarity for s in scores) / n,
        avg_entropy_ratio=sum(s.entropy_ratio for s in scores) / n,
        ttr_ratio=ttr_ratio(
            [p.generated for p in sampled], [p.reference for p in sampled]
        ),
        avg_cosine=(
            sum(s.cosine_similarity for s in scores) / n if ref_results is not None else None
        ),
        avg_bertscore_f1=(
            sum(s.bertscore_f1 for s in scores) / n if ref_results is not None else None
        ),
        n_pairs_scored=n,
        notes=notes,
    )


def _cell(value: float | None, fmt: str = "%.4f") -> str:
    return "" if value is None else fmt % value


def render_quality_csv(reports: list[SetQualityReport]) -> str:
    """One row per method; word counts rendered as rounded integers."""
    lines = [QUALITY_CSV_HEADER]
    for r in reports:
        lines.append(
            ",".join(
                [
                    r.method_name,
                    str(round(r.avg_word_ref)),
                    str(round(r.avg_word_gen)),
                    _cell(r.word_ratio),
                    _cell(r.avg_jaccard),
                    _cell(r.avg_entropy_ratio),
                    _cell(r.ttr_ratio),
                    _cell(r.avg_cosine),
                    _cell(r.avg_bertscore_f1),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def quality_report_rows(reports: list[SetQualityReport]) -> list[dict]:
    """Full-precision dict rows, one per report."""
    return [
        {
            "method": r.method_name,
            "avg_word_ref": r.avg_word_ref,
            "avg_word_gen": r.avg_word_gen,
            "word_ratio": r.word_ratio,
            "avg_jaccard": r.avg_jaccard,
            "avg_entropy_ratio": r.avg_entropy_ratio,
            "ttr_ratio": r.ttr_ratio,
            "avg_cosine": r.avg_cosine,
            "avg_bertscore_f1": r.avg_bertscore_f1,
            "n_pairs_scored": r.n_pairs_scored,
            "notes": list(r.notes),
        }
        for r in reports
    ]


def quality_report_json(reports: list[SetQualityReport]) -> str:
    return json.dumps(
        quality_report_rows(reports), indent=2, sort_keys=True, ensure_ascii=False
    ) + "\n"
