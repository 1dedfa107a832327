"""Deterministic offline stand-in for the chat, translation, and embedding
backends.

Every reply is a pure function of (seed, request): no clock, no RNG state,
no call counter. Hashing goes through keyed blake2b so outputs are stable
across processes and platforms, unlike the builtin ``hash``.

The translation mock encodes text into a target language with a per-language
letter shift (invertible), and decodes back to English with a small seeded
amount of synonym drift, so a round trip is close to, but not exactly, the
original. That gives the quality metrics something real to measure.
"""

from __future__ import annotations

import hashlib
import re

from .._text import tokenize
from .base import (
    LANGUAGES,
    ChatRequest,
    ChatResponse,
    EmbeddingResult,
    TranslationRequest,
    check_embedding_batch,
)
from .synonyms import SYNONYMS

MOCK_EMBED_DIM = 64

_P1_RE = re.compile(
    r"^Paraphrase the following sentence\. Output only the paraphrase\.\n(.*)$",
    re.DOTALL,
)
_P2_RE = re.compile(
    r"^Provide (\d+) distinct paraphrases of the following sentence, "
    r"one per line, no numbering\.\n(.*)$",
    re.DOTALL,
)
_GEN_RE = re.compile(
    r"^Generate (\d+) different sentences in various forms that express a strong "
    r"emotional sentiment for the following emotion: ([^\n]*)"
    r"(?:\nExamples:\n(.*))?$",
    re.DOTALL,
)
_TRANS_RE = re.compile(
    r"^Translate the following text from ([a-z]{2}) to ([a-z]{2})\. "
    r"Output only the translation\.\n(.*)$",
    re.DOTALL,
)

_OPENERS = ("I feel", "Honestly, I feel", "Right now I am", "Deep down I am",
            "These days I feel", "Somehow I am")
_DEGREES = ("so", "truly", "completely", "quietly", "utterly", "painfully")
_STATES = ("full of", "overcome with", "wrapped up in", "carried away by",
           "weighed down by", "brimming with")
_TAILS = ("about what happened", "about everything around me", "after all this time",
          "whenever I think back", "and everyone can tell", "even if I hide it",
          "more than words can say", "since this morning")


def _lang_shift(code: str) -> int:
    """Stable letter-shift for a language code; English is the fixed point."""
    if code == "en":
        return 0
    d = hashlib.blake2b(code.encode("utf-8"), digest_size=2, key=b"textaug-v1").digest()
    return int.from_bytes(d, "big") % 25 + 1


def _caesar(text: str, shift: int) -> str:
    out = []
    for ch in text:
        o = ord(ch)
        if 97 <= o <= 122:
            out.append(chr(97 + (o - 97 + shift) % 26))
        elif 65 <= o <= 90:
            out.append(chr(65 + (o - 65 + shift) % 26))
        else:
            out.append(ch)
    return "".join(out)


def _split_affixes(word: str) -> tuple[str, str, str]:
    """Split a whitespace token into (leading punct, core, trailing punct)."""
    start, end = 0, len(word)
    while start < end and not (word[start].isalnum() or word[start] == "_"):
        start += 1
    while end > start and not (word[end - 1].isalnum() or word[end - 1] == "_"):
        end -= 1
    return word[:start], word[start:end], word[end:]


def _match_case(candidate: str, original: str) -> str:
    if original.isupper() and len(original) > 1:
        return candidate.upper()
    if original[:1].isupper():
        return candidate[:1].upper() + candidate[1:]
    return candidate


class MockProvider:
    """Seeded in-process implementation of all three provider protocols."""

    dimension = MOCK_EMBED_DIM

    def __init__(self, seed: int = 0):
        self.seed = int(seed)
        self._key = f"textaug-mock-{self.seed}".encode("utf-8")[:64]
        self.supported_languages = frozenset(LANGUAGES)

    # -- hashing ---------------------------------------------------------

    def _h(self, *parts: object) -> int:
        h = hashlib.blake2b(key=self._key, digest_size=8)
        for part in parts:
            raw = part if isinstance(part, bytes) else str(part).encode("utf-8")
            h.update(len(raw).to_bytes(4, "big"))
            h.update(raw)
        return int.from_bytes(h.digest(), "big")

    # -- lexical edits ---------------------------------------------------

    def _substitute(self, text: str, denom: int, salt: tuple) -> str:
        """Replace roughly 1/denom of the words, never all, never none.

        The replacement word is guaranteed absent from the source text, and
        at least one source word survives, so the edited text is lexically
        near but never identical (needs two substitutable words to act).
        """
        words = text.split()
        cores = [_split_affixes(w) for w in words]
        eligible = [i for i, (_, core, _) in enumerate(cores) if core]
        if len(eligible) < 2:
            return text
        chosen = [i for i in eligible if self._h("sub", *salt, i, words[i]) % denom == 0]
        if not chosen:
            chosen = [eligible[self._h("force", *salt) % len(eligible)]]
        if len(chosen) >= len(eligible):
            keep = eligible[self._h("keep", *salt) % len(eligible)]
            chosen = [i for i in chosen if i != keep]
        src_set = {core.lower() for _, core, _ in cores if core}
        out = list(words)
        for i in chosen:
            prefix, core, suffix = cores[i]
            candidate = SYNONYMS.get(core.lower()) or _caesar(core.lower(), 1)
            while candidate in src_set or candidate == core.lower():
                candidate += "x"
            src_set.add(candidate)
            out[i] = prefix + _match_case(candidate, core) + suffix
        return " ".join(out)

    def _paraphrase(self, text: str, salt: tuple) -> str:
        reordered = text
        parts = text.split(", ", 1)
        if len(parts) == 2 and parts[1] and self._h("swap", *salt) % 2 == 0:
            reordered = parts[1] + ", " + parts[0]
        return self._substitute(reordered, 3, salt)

    # -- chat ------------------------------------------------------------

    def chat_complete(self, request: ChatRequest) -> ChatResponse:
        prompt = request.user_prompt
        if m := _GEN_RE.match(prompt):
            n = int(m.group(1))
            label = m.group(2)
            choices = [self._generation_choice(n, label, prompt, k)
                       for k in range(request.n_choices)]
        elif m := _P2_RE.match(prompt):
            n, text = int(m.group(1)), m.group(2)
            choices = [self._paraphrase_batch(n, text, k)
                       for k in range(request.n_choices)]
        elif m := _P1_RE.match(prompt):
            text = m.group(1)
            choices = self._distinct(
                [self._paraphrase(text, ("p1", text, k))
                 for k in range(request.n_choices)]
            )
        elif (m := _TRANS_RE.match(prompt)) and m.group(1) in LANGUAGES and m.group(2) in LANGUAGES:
            translated = self._translate_text(m.group(3), m.group(1), m.group(2))
            choices = [translated] * request.n_choices
        else:
            choices = [
                f"deterministic mock reply {k}: {self._h('fallback', prompt, k):016x}"
                for k in range(request.n_choices)
            ]
        return ChatResponse(choices=choices, model=request.model)

    def _distinct(self, items: list[str]) -> list[str]:
        seen: set[str] = set()
        out = []
        for item in items:
            while item in seen:
                item += " indeed"
            seen.add(item)
            out.append(item)
        return out

    def _generation_choice(self, n: int, label: str, prompt: str, k: int) -> str:
        lines: list[str] = []
        for j in range(n):
            salt = ("gen", prompt, k, j)
            opener = _OPENERS[self._h(*salt, "opener") % len(_OPENERS)]
            degree = _DEGREES[self._h(*salt, "degree") % len(_DEGREES)]
            state = _STATES[self._h(*salt, "state") % len(_STATES)]
            tail = _TAILS[self._h(*salt, "tail") % len(_TAILS)]
            sentence = f"{opener} {degree} {state} {label} {tail}."
            bump = 0
            while sentence in lines:
                bump += 1
                sentence = f"{opener} {degree} {state} {label} {tail}, take {bump}."
            lines.append(sentence)
        return "\n".join(lines)

    def _paraphrase_batch(self, n: int, text: str, k: int) -> str:
        lines = self._distinct(
            [self._paraphrase(text, ("p2", text, k, j)) for j in range(n)]
        )
        return "\n".join(lines)

    # -- translation -----------------------------------------------------

    def translate(self, request: TranslationRequest) -> str:
        return self._translate_text(request.text, request.source_lang, request.target_lang)

    def _translate_text(self, text: str, src: str, dst: str) -> str:
        english = _caesar(text, -_lang_shift(src))
        out = _caesar(english, _lang_shift(dst))
        if dst == "en":
            out = self._substitute(out, 10, ("bt", src, text))
        return out

    # -- embeddings ------------------------------------------------------

    def embed(self, texts: list[str], with_tokens: bool = False) -> list[EmbeddingResult]:
        from ..errors import ValidationError

        if not texts:
            raise ValidationError("embed requires at least one text")
        results = []
        for text in texts:
            sentence = [0.0] * MOCK_EMBED_DIM
            token_vectors: list[tuple[str, list[float]]] = []
            for token in tokenize(text):
                vec = self._token_vector(token)
                for i, v in enumerate(vec):
                    sentence[i] += v
                if with_tokens:
                    token_vectors.append((token, vec))
            results.append(
                EmbeddingResult(sentence, token_vectors if with_tokens else None)
            )
        return check_embedding_batch(results)

    def _token_vector(self, token: str) -> list[float]:
        vec = [0.0] * MOCK_EMBED_DIM
        h1 = self._h("emb1", token)
        h2 = self._h("emb2", token)
        i1 = h1 % MOCK_EMBED_DIM
        i2 = h2 % MOCK_EMBED_DIM
        if i2 == i1:
            i2 = (i1 + 1) % MOCK_EMBED_DIM
        vec[i1] += 1.0
        vec[i2] += 1.0 if (h2 >> 8) & 1 else -1.0
        return vec
