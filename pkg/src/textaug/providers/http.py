"""HTTP provider clients: chat completion, translation, and embeddings.

All three share one transport core that adds retry with exponential backoff,
token-bucket rate limiting, a bound on concurrent in-flight requests,
monotone request ids in the logs, and optional record/replay of every
exchange as one JSON file per request (zero-padded id as the filename).

Credentials are never taken as literals; a client is pointed at an
environment variable name and reads the key from there, so run manifests
stay secret-free.
"""

from __future__ import annotations

import json
import logging
import os
import threading
import time
from pathlib import Path

import httpx

from ..errors import ConfigError, ProtocolError, ProviderError, ProviderUnavailableError
from ..prompts import PARAPHRASE_SYSTEM_MESSAGE, TRANSLATION_TEMPLATE
from .base import (
    DEFAULT_TRANSLATION_TEMPERATURE,
    LANGUAGES,
    ChatRequest,
    ChatResponse,
    EmbeddingResult,
    RetryPolicy,
    TranslationRequest,
    check_embedding_batch,
)

logger = logging.getLogger("textaug.providers")


def _excerpt(body: object, limit: int = 200) -> str:
    text = body if isinstance(body, str) else json.dumps(body, ensure_ascii=False)
    return text[:limit]


class _TokenBucket:
    """Classic token bucket; rate is given in requests per minute."""

    def __init__(self, per_minute: float, burst: float | None, clock, sleep):
        if per_minute <= 0:
            raise ConfigError("requests_per_minute must be positive")
        self.rate = per_minute / 60.0
        self.capacity = per_minute if burst is None else burst
        self.tokens = self.capacity
        self.updated = clock()
        self._clock = clock
        self._sleep = sleep
        self._lock = threading.Lock()

    def acquire(self) -> float:
        """Take one token, sleeping until one is available; returns the wait."""
        waited = 0.0
        with self._lock:
            while True:
                now = self._clock()
                self.tokens = min(self.capacity, self.tokens + (now - self.updated) * self.rate)
                self.updated = now
                if self.tokens >= 1.0:
                    self.tokens -= 1.0
                    return waited
                need = (1.0 - self.tokens) / self.rate
                self._sleep(need)
                waited += need


class HttpClientBase:
    """Shared POST-JSON core for the concrete clients.

    record_dir and replay_dir are mutually exclusive. Replay assumes the
    same single-threaded call order as the recording run; each incoming
    request is matched against the stored exchange with the same id.
    """

    def __init__(
        self,
        base_url: str,
        *,
        api_key_env: str | None = None,
        timeout: float = 30.0,
        retry: RetryPolicy | None = None,
        requests_per_minute: float | None = None,
        burst: float | None = None,
        max_in_flight: int = 4,
        record_dir: str | Path | None = None,
        replay_dir: str | Path | None = None,
        transport: httpx.BaseTransport | None = None,
        sleep=time.sleep,
        clock=time.monotonic,
    ):
        if record_dir is not None and replay_dir is not None:
            raise ConfigError("record_dir and replay_dir are mutually exclusive")
        if max_in_flight < 1:
            raise ConfigError("max_in_flight must be >= 1")
        headers = {}
        if api_key_env:
            key = os.environ.get(api_key_env, "")
            if not key:
                raise ConfigError(f"environment variable {api_key_env!r} is not set")
            headers["Authorization"] = f"Bearer {key}"
        self.retry = retry or RetryPolicy()
        self._sleep = sleep
        self._client = httpx.Client(
            base_url=base_url, timeout=timeout, headers=headers, transport=transport
        )
        self._bucket = (
            _TokenBucket(requests_per_minute, burst, clock, sleep)
            if requests_per_minute is not None
            else None
        )
        self._semaphore = threading.BoundedSemaphore(max_in_flight)
        self._id_lock = threading.Lock()
        self._next_id = 0
        self._record_dir = Path(record_dir) if record_dir is not None else None
        self._replay_dir = Path(replay_dir) if replay_dir is not None else None
        if self._record_dir is not None:
            self._record_dir.mkdir(parents=True, exist_ok=True)

    def close(self) -> None:
        self._client.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    def _take_id(self) -> int:
        with self._id_lock:
            rid = self._next_id
            self._next_id += 1
            return rid

    def _post_json(self, path: str, payload: dict) -> dict:
        rid = self._take_id()
        if self._replay_dir is not None:
            return self._replay(rid, path, payload)
        with self._semaphore:
            data = self._send(rid, path, payload)
        if self._record_dir is not None:
            exchange = {"id": rid, "path": path, "request": payload, "response": data}
            out = self._record_dir / f"{rid:06d}.json"
            out.write_text(
                json.dumps(exchange, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
                encoding="utf-8",
            )
        return data

    def _send(self, rid: int, path: str, payload: dict) -> dict:
        attempt = 0
        while True:
            if self._bucket is not None:
                self._bucket.acquire()
            try:
                response = self._client.post(path, json=payload)
            except httpx.TransportError as exc:
                logger.warning(
                    "request %06d POST %s attempt %d: transport error: %s",
                    rid, path, attempt, exc,
                )
                if attempt >= self.retry.max_retries:
                    raise ProviderUnavailableError(
                        f"POST {path} failed after {attempt + 1} attempts: {exc}"
                    ) from exc
                self._sleep(self.retry.delay(attempt))
                attempt += 1
                continue
            if response.status_code == 429 or response.status_code >= 500:
                logger.warning(
                    "request %06d POST %s attempt %d: HTTP %d",
                    rid, path, attempt, response.status_code,
                )
                if attempt >= self.retry.max_retries:
                    raise ProviderUnavailableError(
                        f"POST {path} returned HTTP {response.status_code} "
                        f"after {attempt + 1} attempts"
                    )
                self._sleep(self.retry.delay(attempt))
                attempt += 1
                continue
            if response.status_code != 200:
                raise ProviderError(
                    f"POST {path} returned HTTP {response.status_code}: "
                    f"{_excerpt(response.text)}"
                )
            logger.info("request %06d POST %s: HTTP 200", rid, path)
            try:
                return response.json()
            except ValueError as exc:
                raise ProtocolError(
                    "response body is not JSON", payload_excerpt=_excerpt(response.text)
                ) from exc

    def _replay(self, rid: int, path: str, payload: dict) -> dict:
        source = self._replay_dir / f"{rid:06d}.json"
        if not source.exists():
            raise ProviderUnavailableError(
                f"no recorded exchange {rid:06d} under {self._replay_dir}"
            )
        stored = json.loads(source.read_text(encoding="utf-8"))
        if stored.get("path") != path or stored.get("request") != payload:
            raise ProtocolError(
                f"request {rid:06d} does not match the recorded exchange",
                payload_excerpt=_excerpt(payload),
            )
        return stored["response"]


class HttpChatClient(HttpClientBase):
    """Chat-completion client; doubles as a translation backend through a
    fixed prompt template."""

    def __init__(
        self,
        base_url: str,
        *,
        model: str,
        path: str = "/v1/chat/completions",
        supported_languages=None,
        **kwargs,
    ):
        super().__init__(base_url, **kwargs)
        self.model = model
        self.path = path
        self.supported_languages = frozenset(supported_languages or LANGUAGES)

    def chat_complete(self, request: ChatRequest) -> ChatResponse:
        messages = []
        if request.system_message:
            messages.append({"role": "system", "content": request.system_message})
        messages.append({"role": "user", "content": request.user_prompt})
        payload = {
            "model": request.model,
            "messages": messages,
            "temperature": request.temperature,
            "n": request.n_choices,
        }
        data = self._post_json(self.path, payload)
        try:
            choices = [c["message"]["content"] for c in data["choices"]]
        except (KeyError, TypeError, IndexError) as exc:
            raise ProtocolError(
                "chat response missing choices[].message.content",
                payload_excerpt=_excerpt(data),
            ) from exc
        if len(choices) != request.n_choices:
            raise ProtocolError(
                f"expected {request.n_choices} choices, got {len(choices)}",
                payload_excerpt=_excerpt(data),
            )
        for c in choices:
            if not isinstance(c, str) or not c.strip():
                raise ProtocolError(
                    "empty choice in chat response", payload_excerpt=_excerpt(data)
                )
        return ChatResponse(choices=choices, model=str(data.get("model", request.model)))

    def translate(self, request: TranslationRequest) -> str:
        if (
            request.source_lang not in self.supported_languages
            or request.target_lang not in self.supported_languages
        ):
            raise ConfigError(
                f"language pair {request.source_lang}->{request.target_lang} "
                "is not supported by this client"
            )
        prompt = TRANSLATION_TEMPLATE.format(
            src=request.source_lang, dst=request.target_lang, text=request.text
        )
        response = self.chat_complete(
            ChatRequest(
                model=self.model,
                system_message=PARAPHRASE_SYSTEM_MESSAGE,
                user_prompt=prompt,
                temperature=DEFAULT_TRANSLATION_TEMPERATURE,
                n_choices=1,
            )
        )
        return response.choices[0].strip()


class HttpTranslationClient(HttpClientBase):
    """Client for a dedicated translation endpoint (DeepL-style JSON)."""

    def __init__(
        self,
        base_url: str,
        *,
        path: str = "/v2/translate",
        supported_languages=None,
        **kwargs,
    ):
        super().__init__(base_url, **kwargs)
        self.path = path
        self.supported_languages = frozenset(supported_languages or LANGUAGES)

    def translate(self, request: TranslationRequest) -> str:
        if (
            request.source_lang not in self.supported_languages
            or request.target_lang not in self.supported_languages
        ):
            raise ConfigError(
                f"language pair {request.source_lang}->{request.target_lang} "
                "is not supported by this client"
            )
        payload = {"text": [request.text], "target_lang": request.target_lang}
        data = self._post_json(self.path, payload)
        try:
            text = data["translations"][0]["text"]
        except (KeyError, TypeError, IndexError) as exc:
            raise ProtocolError(
                "translation response missing translations[].text",
                payload_excerpt=_excerpt(data),
            ) from exc
        if not isinstance(text, str) or not text.strip():
            raise ProtocolError("empty translation", payload_excerpt=_excerpt(data))
        return text


class HttpEmbeddingClient(HttpClientBase):
    """Sentence and token embedding client."""

    def __init__(
        self,
        base_url: str,
        *,
        model: str,
        path: str = "/v1/embeddings",
        token_path: str = "/token-embeddings",
        **kwargs,
    ):
        super().__init__(base_url, **kwargs)
        self.model = model
        self.path = path
        self.token_path = token_path

    def embed(self, texts: list[str], with_tokens: bool = False) -> list[EmbeddingResult]:
        from ..errors import ValidationError

        if not texts:
            raise ValidationError("embed requires at least one text")
        payload = {"model": self.model, "input": list(texts)}
        data = self._post_json(self.path, payload)
        try:
            rows = data["data"]
            results = [
                EmbeddingResult([float(v) for v in row["embedding"]]) for row in rows
            ]
        except (KeyError, TypeError, ValueError) as exc:
            raise ProtocolError(
                "embedding response missing data[].embedding",
                payload_excerpt=_excerpt(data),
            ) from exc
        if len(results) != len(texts):
            raise ProtocolError(
                f"expected {len(texts)} embeddings, got {len(results)}",
                payload_excerpt=_excerpt(data),
            )
        if with_tokens:
            tdata = self._post_json(self.token_path, {"input": list(texts)})
            try:
                trows = tdata["data"]
                if len(trows) != len(texts):
                    raise ProtocolError(
                        f"expected {len(texts)} token rows, got {len(trows)}",
                        payload_excerpt=_excerpt(tdata),
                    )
                for result, row in zip(results, trows):
                    tokens = row["tokens"]
                    vectors = row["vectors"]
                    if len(tokens) != len(vectors):
                        raise ProtocolError(
                            "token/vector count mismatch in token embeddings",
                            payload_excerpt=_excerpt(tdata),
                        )
                    result.token_vectors = [
                        (str(t), [float(v) for v in vec])
                        for t, vec in zip(tokens, vectors)
                    ]
            except (KeyError, TypeError, ValueError) as exc:
                raise ProtocolError(
                    "token embedding response missing data[].tokens/vectors",
                    payload_excerpt=_excerpt(tdata),
                ) from exc
        return check_embedding_batch(results)
