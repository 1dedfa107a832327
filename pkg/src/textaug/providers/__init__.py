"""Provider clients: HTTP backends plus a deterministic offline mock."""

from .base import (
    DEFAULT_GENERATION_TEMPERATURE,
    DEFAULT_TRANSLATION_TEMPERATURE,
    LANGUAGES,
    ChatProvider,
    ChatRequest,
    ChatResponse,
    EmbeddingProvider,
    EmbeddingResult,
    RetryPolicy,
    TranslationProvider,
    TranslationRequest,
    check_embedding_batch,
)
from .http import (
    HttpChatClient,
    HttpClientBase,
    HttpEmbeddingClient,
    HttpTranslationClient,
)
from .mock import MOCK_EMBED_DIM, MockProvider

__all__ = [
    "DEFAULT_GENERATION_TEMPERATURE",
    "DEFAULT_TRANSLATION_TEMPERATURE",
    "LANGUAGES",
    "MOCK_EMBED_DIM",
    "ChatProvider",
    "ChatRequest",
    "ChatResponse",
    "EmbeddingProvider",
    "EmbeddingResult",
    "HttpChatClient",
    "HttpClientBase",
    "HttpEmbeddingClient",
    "HttpTranslationClient",
    "MockProvider",
    "RetryPolicy",
    "TranslationProvider",
    "TranslationRequest",
    "check_embedding_batch",
]
