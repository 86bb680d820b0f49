"""Completion backends: OpenAI-compatible HTTP endpoints and an in-process mock."""

from __future__ import annotations

import os
import threading
import time
from dataclasses import dataclass
from typing import Callable, Mapping, Protocol

import httpx

from uoce.prompts import BLOCK_QUERY, GENERATION_CUE, PromptText


@dataclass(frozen=True)
class ModelConfig:
    """Deterministic generation settings for one model."""

    model: str
    endpoint: str = "https://api.openai.com/v1"
    api_key_env: str = "OPENAI_API_KEY"
    temperature: float = 0.0
    max_new_tokens: int = 512
    timeout: float = 60.0
    max_retries: int = 2
    max_concurrent: int = 4
    retry_backoff: float = 0.5

    def __post_init__(self) -> None:
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")
        if self.max_new_tokens <= 0:
            raise ValueError("max_new_tokens must be positive")
        if self.max_concurrent < 1:
            raise ValueError("max_concurrent must be at least 1")
        if self.max_retries < 0:
            raise ValueError("max_retries must be >= 0")


class CompletionError(RuntimeError):
    """A completion request that could not produce a reply."""


class TransportError(CompletionError):
    """Network or server-side failure that persisted through all retries."""


class AuthenticationError(CompletionError):
    """Credential rejected; reported by env-var name, never by value."""


class Backend(Protocol):
    def complete(self, prompt: PromptText, cfg: ModelConfig) -> str: ...


class _Retryable(Exception):
    pass


class HttpBackend:
    """Chat-completions client with exponential-backoff retries.

    Credentials come from the environment variable named in the model config;
    when that variable is unset the request is sent without authorization,
    which suits local OpenAI-compatible servers.
    """

    def __init__(
        self,
        transport: httpx.BaseTransport | None = None,
        sleep: Callable[[float], None] = time.sleep,
    ):
        self._transport = transport
        self._sleep = sleep
        self._shared_client: httpx.Client | None = None
        self._lock = threading.Lock()

    def _client(self) -> httpx.Client:
        with self._lock:
            if self._shared_client is None:
                self._shared_client = httpx.Client(transport=self._transport)
            return self._shared_client

    def complete(self, prompt: PromptText, cfg: ModelConfig) -> str:
        url = cfg.endpoint.rstrip("/") + "/chat/completions"
        headers = {}
        credential = os.environ.get(cfg.api_key_env)
        if credential:
            headers["Authorization"] = f"Bearer {credential}"
        payload = {
            "model": cfg.model,
            "messages": [{"role": "user", "content": prompt.text}],
            "temperature": cfg.temperature,
            "max_tokens": cfg.max_new_tokens,
        }
        client = self._client()
        attempts = cfg.max_retries + 1
        last_failure = "unknown failure"
        for attempt in range(attempts):
            try:
                response = client.post(
                    url, json=payload, headers=headers, timeout=cfg.timeout
                )
                if response.status_code in (401, 403):
                    raise AuthenticationError(
                        f"endpoint rejected the request ({response.status_code}); "
                        f"check the credential in ${cfg.api_key_env}"
                    )
                if response.status_code == 429 or response.status_code >= 500:
                    raise _Retryable(f"HTTP {response.status_code}")
                if response.status_code >= 400:
                    raise CompletionError(
                        f"HTTP {response.status_code}: {response.text[:200]}"
                    )
                data = response.json()
                return data["choices"][0]["message"]["content"]
            except (httpx.TransportError, _Retryable) as exc:
                last_failure = str(exc)
                if attempt + 1 < attempts:
                    self._sleep(cfg.retry_backoff * (2**attempt))
            except (KeyError, IndexError, TypeError, ValueError) as exc:
                raise CompletionError(f"unexpected response shape: {exc}") from exc
        raise TransportError(
            f"request to {url} failed after {attempts} attempts: {last_failure}"
        )


def query_of(prompt: PromptText) -> str:
    """Recover the raw query text from a prompt's final block."""
    block = prompt.block_text(BLOCK_QUERY)
    prefix, suffix = "Input: ", "\n" + GENERATION_CUE
    if block.startswith(prefix) and block.endswith(suffix):
        return block[len(prefix) : -len(suffix)]
    return block


class MockBackend:
    """Deterministic offline backend for tests and dry runs.

    Replies are keyed by the prompt's query text; a ``reply_fn`` takes
    precedence and may raise to simulate failures. The backend counts calls
    and tracks the maximum number of concurrent in-flight requests.
    """

    def __init__(
        self,
        replies: Mapping[str, str] | None = None,
        default_reply: str = "[]",
        reply_fn: Callable[[PromptText], str] | None = None,
        delay: float = 0.0,
    ):
        self.replies = dict(replies or {})
        self.default_reply = default_reply
        self.reply_fn = reply_fn
        self.delay = delay
        self.calls = 0
        self.max_inflight = 0
        self._inflight = 0
        self._lock = threading.Lock()

    def complete(self, prompt: PromptText, cfg: ModelConfig) -> str:
        with self._lock:
            self.calls += 1
            self._inflight += 1
            self.max_inflight = max(self.max_inflight, self._inflight)
        try:
            if self.delay:
                time.sleep(self.delay)
            if self.reply_fn is not None:
                return self.reply_fn(prompt)
            return self.replies.get(query_of(prompt), self.default_reply)
        finally:
            with self._lock:
                self._inflight -= 1
