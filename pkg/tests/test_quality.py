"""Lexical and embedding metrics against brute-force oracles."""

from __future__ import annotations

import math
import random
import time

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from textaug._text import tokenize
from textaug.errors import ProviderError, UndefinedMetricError, ValidationError
from textaug.quality import (
    QUALITY_CSV_HEADER,
    SentencePair,
    SetQualityReport,
    bertscore_f1,
    cosine_similarity,
    entropy,
    entropy_ratio,
    evaluate_set,
    jaccard_dissimilarity,
    render_quality_csv,
    sample_pairs,
    ttr,
    ttr_ratio,
)

VOCAB = [
    "sun", "rain", "walk", "home", "quiet", "loud", "small", "again",
    "never", "always", "feels", "good",
]


# ---------------------------------------------------------------------------
# brute-force oracles (independent, loop-based implementations)

def oracle_jaccard_dissimilarity(a: str, b: str) -> float:
    sa, sb = set(tokenize(a)), set(tokenize(b))
    if not sa and not sb:
        return 0.0
    inter = 0
    for tok in sa:
        if tok in sb:
            inter += 1
    union = len(sa) + len(sb) - inter
    return 1.0 - inter / union


def oracle_entropy(text: str) -> float:
    tokens = tokenize(text)
    if not tokens:
        return 0.0
    counts: dict[str, int] = {}
    for tok in tokens:
        counts[tok] = counts.get(tok, 0) + 1
    total = len(tokens)
    h = 0.0
    for c in counts.values():
        p = c / total
        h -= p * math.log2(p)
    return h


def oracle_ttr(texts: list[str]) -> float:
    tokens: list[str] = []
    for text in texts:
        tokens.extend(tokenize(text))
    return len(set(tokens)) / len(tokens)


def oracle_cosine(a: list[float], b: list[float]) -> float:
    dot = sum(x * y for x, y in zip(a, b))
    na = math.sqrt(sum(x * x for x in a))
    nb = math.sqrt(sum(y * y for y in b))
    return dot / (max(na, 1e-8) * max(nb, 1e-8))


def oracle_bertscore_f1(ref: list[list[float]], gen: list[list[float]]) -> float:
    recall = sum(max(oracle_cosine(r, g) for g in gen) for r in ref) / len(ref)
    precision = sum(max(oracle_cosine(g, r) for r in ref) for g in gen) / len(gen)
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def random_text(rng: random.Random) -> str:
    return " ".join(rng.choices(VOCAB, k=rng.randint(1, 12)))


# ---------------------------------------------------------------------------
# oracle suite: >= 100 randomized inputs per metric

def test_metric_oracle_suite_randomized():
    rng = random.Random(0)
    start = time.monotonic()
    for _ in range(120):
        a, b = random_text(rng), random_text(rng)
        assert jaccard_dissimilarity(a, b) == pytest.approx(
            oracle_jaccard_dissimilarity(a, b), abs=1e-12
        )
        assert entropy(a) == pytest.approx(oracle_entropy(a), abs=1e-12)
        texts = [random_text(rng) for _ in range(rng.randint(1, 5))]
        assert ttr(texts) == pytest.approx(oracle_ttr(texts), abs=1e-12)
        dim = rng.randint(2, 8)
        u = [rng.uniform(-1, 1) for _ in range(dim)]
        v = [rng.uniform(-1, 1) for _ in range(dim)]
        assert cosine_similarity(u, v) == pytest.approx(oracle_cosine(u, v), abs=1e-9)
        ref = [[rng.uniform(-1, 1) for _ in range(dim)] for _ in range(rng.randint(1, 6))]
        gen = [[rng.uniform(-1, 1) for _ in range(dim)] for _ in range(rng.randint(1, 6))]
        got = bertscore_f1(
            [("r", vec) for vec in ref], [("g", vec) for vec in gen]
        )
        assert got == pytest.approx(oracle_bertscore_f1(ref, gen), abs=1e-9)
    assert time.monotonic() - start < 5.0


# ---------------------------------------------------------------------------
# hand-checked values and edge guards

def test_jaccard_hand_example():
    # {a,b,c} vs {b,c,d}: intersection 2, union 4
    assert jaccard_dissimilarity("a b c", "b c d") == pytest.approx(0.5)


def test_jaccard_both_empty_is_zero():
    assert jaccard_dissimilarity("...", "!!!") == 0.0


def test_entropy_uniform_two_tokens_is_one_bit():
    assert entropy("yes no") == pytest.approx(1.0)
    assert entropy("yes yes yes") == 0.0


def test_entropy_ratio_guards():
    value, notes = entropy_ratio(SentencePair("word word", "word word", 0))
    assert value == 1.0 and notes == ()
    value, notes = entropy_ratio(SentencePair("word word", "word other", 0))
    assert value == pytest.approx(1.0 / 1e-9)
    assert "entropy_ratio_guarded" in notes


def test_ttr_requires_tokens():
    with pytest.raises(UndefinedMetricError):
        ttr(["?!"])


def test_ttr_hand_example():
    # 4 types over 6 tokens
    assert ttr(["a b a", "c d c"]) == pytest.approx(4 / 6)


def test_ttr_ratio_is_set_level():
    # generated set first: ttr(generated) / ttr(reference)
    refs = ["a b", "a b"]
    gens = ["c d", "e f"]
    assert ttr_ratio(gens, refs) == pytest.approx((4 / 4) / (2 / 4))


def test_cosine_dimension_mismatch():
    with pytest.raises(ValueError):
        cosine_similarity([1.0, 0.0], [1.0])


def test_cosine_zero_vector_guard():
    assert cosine_similarity([0.0, 0.0], [1.0, 0.0]) == 0.0


def test_bertscore_empty_lists_rejected():
    with pytest.raises(UndefinedMetricError):
        bertscore_f1([], [[1.0]])


def test_sample_pairs_every_fourth():
    for n in range(1, 101):
        sampled = sample_pairs(list(range(n)))
        assert sampled == list(range(0, n, 4))
        assert len(sampled) == math.ceil(n / 4)


# ---------------------------------------------------------------------------
# hypothesis properties

_texts = st.lists(st.sampled_from(VOCAB), min_size=1, max_size=10).map(" ".join)
_vectors = st.lists(
    st.floats(min_value=-5, max_value=5, allow_nan=False), min_size=3, max_size=3
)


@settings(max_examples=60, deadline=None)
@given(_texts, _texts)
def test_jaccard_symmetric_and_bounded(a, b):
    d = jaccard_dissimilarity(a, b)
    assert 0.0 <= d <= 1.0
    assert d == jaccard_dissimilarity(b, a)
    assert jaccard_dissimilarity(a, a) == 0.0


@settings(max_examples=60, deadline=None)
@given(_texts)
def test_entropy_nonnegative(text):
    assert entropy(text) >= 0.0


@settings(max_examples=60, deadline=None)
@given(_vectors, _vectors)
def test_cosine_bounded(u, v):
    c = cosine_similarity(u, v)
    assert -1.0 - 1e-9 <= c <= 1.0 + 1e-9
    assert c == pytest.approx(cosine_similarity(v, u), abs=1e-12)


# With mixed-sign cosines the harmonic mean 2PR/(P+R) is legitimately
# unbounded near P+R = 0, so the [0,1] property is asserted where it holds:
# over non-negative vectors every pairwise cosine is non-negative.
_nonneg_vectors = st.lists(
    st.floats(min_value=0, max_value=5, allow_nan=False), min_size=3, max_size=3
)


@settings(max_examples=40, deadline=None)
@given(
    st.lists(_nonneg_vectors, min_size=1, max_size=5),
    st.lists(_nonneg_vectors, min_size=1, max_size=5),
)
def test_bertscore_bounded_for_nonnegative_vectors(ref, gen):
    f1 = bertscore_f1([("r", v) for v in ref], [("g", v) for v in gen])
    assert -1e-9 <= f1 <= 1.0 + 1e-9


def test_bertscore_zero_denominator_guard():
    # orthogonal tokens: precision and recall are both exactly 0
    assert bertscore_f1([("r", [1.0, 0.0])], [("g", [0.0, 1.0])]) == 0.0


# ---------------------------------------------------------------------------
# evaluate_set

class CountingEmbedder:
    def __init__(self, inner):
        self.inner = inner
        self.calls: list[tuple[int, bool]] = []

    def embed(self, texts, with_tokens=False):
        self.calls.append((len(texts), with_tokens))
        return self.inner.embed(texts, with_tokens=with_tokens)


class FailingEmbedder:
    def embed(self, texts, with_tokens=False):
        raise ProviderError("embedding backend down")


def make_pairs(rows: list[tuple[str, str]]) -> list[SentencePair]:
    return [SentencePair(ref, gen, i) for i, (ref, gen) in enumerate(rows)]


def test_sentence_pair_validation():
    with pytest.raises(ValidationError):
        SentencePair("", "x", 0)
    with pytest.raises(ValidationError):
        SentencePair("x", "y", -1)


def test_evaluate_set_identity(mock_provider):
    texts = [random_text(random.Random(5)) for _ in range(9)]
    report = evaluate_set("identity", make_pairs([(t, t) for t in texts]), mock_provider)
    assert report.avg_jaccard == 0.0
    assert report.avg_entropy_ratio == 1.0
    assert report.word_ratio == 1.0
    assert report.ttr_ratio == 1.0
    assert report.avg_cosine == pytest.approx(1.0, abs=1e-9)
    assert report.avg_bertscore_f1 == pytest.approx(1.0, abs=1e-9)
    # every fourth of 9 pairs
    assert report.n_pairs_scored == 3


def test_evaluate_set_batches_embeddings(mock_provider):
    counting = CountingEmbedder(mock_provider)
    rows = [(f"ref number {i}", f"gen number {i}") for i in range(5)]
    evaluate_set("m", make_pairs(rows), counting)
    # one batched call per side over the 2 sampled pairs, tokens included
    assert counting.calls == [(2, True), (2, True)]


def test_evaluate_set_embedding_failure_degrades(caplog):
    pairs = make_pairs([("one two", "two one")])
    with caplog.at_level("WARNING"):
        report = evaluate_set("m", pairs, FailingEmbedder())
    assert report.avg_cosine is None
    assert report.avg_bertscore_f1 is None
    assert "embeddings_unavailable" in report.notes
    assert report.avg_jaccard is not None
    assert any("embedding" in r.message for r in caplog.records)


def test_evaluate_set_without_client_notes_skip():
    report = evaluate_set("m", make_pairs([("a b", "b c")]), None)
    assert report.avg_cosine is None
    assert "embeddings_skipped_no_client" in report.notes


def test_evaluate_set_rejects_empty():
    with pytest.raises(ValidationError):
        evaluate_set("m", [], None)


def test_evaluate_set_word_ratio():
    report = evaluate_set("m", make_pairs([("one two three", "one two")]), None)
    assert report.avg_word_ref == 3.0
    assert report.avg_word_gen == 2.0
    assert report.word_ratio == pytest.approx(2 / 3)


def test_evaluate_set_samples_every_fourth_pair():
    # 8 pairs -> pairs 0 and 4 scored
    rows = [(f"ref {i} aa bb", f"gen {i} cc dd") for i in range(8)]
    report = evaluate_set("m", make_pairs(rows), None)
    assert report.n_pairs_scored == 2


# ---------------------------------------------------------------------------
# rendering

def test_render_quality_csv_golden():
    report = SetQualityReport(
        method_name="bt",
        avg_word_ref=10.6,
        avg_word_gen=11.2,
        word_ratio=1.0566,
        avg_jaccard=0.38491,
        avg_entropy_ratio=1.00004,
        ttr_ratio=0.97531,
        avg_cosine=0.87654,
        avg_bertscore_f1=0.91234,
        n_pairs_scored=3,
        notes=(),
    )
    text = render_quality_csv([report])
    lines = text.splitlines()
    assert lines[0] == QUALITY_CSV_HEADER
    assert lines[1] == "bt,11,11,1.0566,0.3849,1.0000,0.9753,0.8765,0.9123"


def test_render_quality_csv_none_cells_empty():
    report = SetQualityReport(
        method_name="m",
        avg_word_ref=4.0,
        avg_word_gen=4.0,
        word_ratio=1.0,
        avg_jaccard=0.0,
        avg_entropy_ratio=1.0,
        ttr_ratio=1.0,
        avg_cosine=None,
        avg_bertscore_f1=None,
        n_pairs_scored=1,
        notes=("embeddings_unavailable",),
    )
    line = render_quality_csv([report]).splitlines()[1]
    assert line == "m,4,4,1.0000,0.0000,1.0000,1.0000,,"


def test_render_quality_csv_header_only_when_no_reports():
    assert render_quality_csv([]) == QUALITY_CSV_HEADER + "\n"
