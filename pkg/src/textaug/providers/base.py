"""Provider request/response types and the client interfaces.

Every backend (HTTP or mock) is used through the three small protocols
below, so the augmentation and quality code never depends on a concrete
client class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Protocol, runtime_checkable

from ..errors import ValidationError

# ISO-639-1 codes the toolkit knows about; translation requests must stay
# inside this registry.
LANGUAGES = {
    "en": "English",
    "ru": "Russian",
    "pl": "Polish",
    "fi": "Finnish",
    "ja": "Japanese",
    "zh": "Chinese",
    "bg": "Bulgarian",
    "es": "Spanish",
    "hu": "Hungarian",
    "el": "Greek",
    "tr": "Turkish",
    "hi": "Hindi",
    "ar": "Arabic",
    "de": "German",
    "fr": "French",
}

DEFAULT_GENERATION_TEMPERATURE = 1.0
DEFAULT_TRANSLATION_TEMPERATURE = 0.0


@dataclass
class ChatRequest:
    model: str
    system_message: str
    user_prompt: str
    temperature: float = DEFAULT_GENERATION_TEMPERATURE
    n_choices: int = 1

    def __post_init__(self):
        if self.n_choices < 1:
            raise ValidationError("n_choices must be >= 1")
        if not self.user_prompt.strip():
            raise ValidationError("user_prompt must be non-empty")
        if self.temperature < 0:
            raise ValidationError("temperature must be >= 0")


@dataclass
class ChatResponse:
    choices: list[str]
    model: str


@dataclass
class TranslationRequest:
    text: str
    source_lang: str
    target_lang: str

    def __post_init__(self):
        for code in (self.source_lang, self.target_lang):
            if code not in LANGUAGES:
                raise ValidationError(f"language {code!r} not in the registry")
        if self.source_lang == self.target_lang:
            raise ValidationError(
                f"source and target language are both {self.source_lang!r}"
            )


@dataclass
class EmbeddingResult:
    sentence_vector: list[float]
    token_vectors: list[tuple[str, list[float]]] | None = None


@runtime_checkable
class ChatProvider(Protocol):
    def chat_complete(self, request: ChatRequest) -> ChatResponse: ...


@runtime_checkable
class TranslationProvider(Protocol):
    supported_languages: frozenset[str]

    def translate(self, request: TranslationRequest) -> str: ...


@runtime_checkable
class EmbeddingProvider(Protocol):
    def embed(self, texts: list[str], with_tokens: bool = False) -> list[EmbeddingResult]: ...


@dataclass
class RetryPolicy:
    """Exponential backoff for transient HTTP failures (429/5xx/transport)."""

    max_retries: int = 4
    backoff_base: float = 0.5
    backoff_cap: float = 30.0

    def delay(self, attempt: int) -> float:
        return min(self.backoff_base * (2**attempt), self.backoff_cap)


def check_embedding_batch(results: list[EmbeddingResult]) -> list[EmbeddingResult]:
    """Enforce the uniform-dimension and finiteness invariants on a batch."""
    from ..errors import ProtocolError

    dims = {len(r.sentence_vector) for r in results}
    if len(dims) > 1:
        raise ProtocolError(f"embedding dimensions differ across batch: {sorted(dims)}")
    for r in results:
        if not all(math.isfinite(v) for v in r.sentence_vector):
            raise ProtocolError("non-finite value in sentence embedding")
        if r.token_vectors is not None:
            for token, vec in r.token_vectors:
                if len(vec) != len(r.sentence_vector):
                    raise ProtocolError(
                        f"token vector for {token!r} has dimension {len(vec)}, "
                        f"expected {len(r.sentence_vector)}"
                    )
    return results
