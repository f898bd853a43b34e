"""HTTP clients for remote language model endpoints.

Wire protocol:

    POST {logit_url}/v1/logits    {"prefix_tokens": [int], "top_k": int}
        -> {"entries": [{"token": int, "surface": str, "logprob": float}]}
    POST {instruct_url}/v1/complete
        {"system": str, "user": str, "max_items": int, "seed": int?}
        -> {"items": [str]}

Failures retry once with a short backoff, then raise BackendUnavailable so a
slow or dead endpoint degrades that well alone, never the whole run.
"""

from __future__ import annotations

import json
import os
import time
from typing import Optional, Sequence

import httpx

from ..errors import (
    BackendUnavailableError,
    ContextTooLongError,
    MalformedResponseError,
)
from .base import InstructRequest, LogitResult, Token, score_stepwise

ENV_LOGIT_URL = "PHRASELETTE_LOGIT_URL"
ENV_INSTRUCT_URL = "PHRASELETTE_INSTRUCT_URL"
ENV_API_KEY = "PHRASELETTE_API_KEY"

DEFAULT_TIMEOUT = 30.0
RETRY_BACKOFF = 0.5


class _HttpClient:
    def __init__(self, base_url: str, api_key: Optional[str], timeout: float,
                 transport: Optional[httpx.BaseTransport] = None):
        headers = {"Authorization": f"Bearer {api_key}"} if api_key else {}
        self._client = httpx.Client(
            base_url=base_url.rstrip("/"),
            headers=headers,
            timeout=timeout,
            transport=transport,
        )

    def post(self, path: str, payload: dict) -> dict:
        last_error: Exception | None = None
        for attempt in range(2):
            if attempt:
                time.sleep(RETRY_BACKOFF)
            try:
                response = self._client.post(path, json=payload)
            except httpx.HTTPError as exc:
                last_error = exc
                continue
            if response.status_code == 422 or response.status_code == 413:
                raise ContextTooLongError(response.text)
            if response.status_code >= 500:
                last_error = BackendUnavailableError(
                    f"{path} returned {response.status_code}"
                )
                continue
            if response.status_code >= 400:
                raise BackendUnavailableError(
                    f"{path} returned {response.status_code}: {response.text}"
                )
            try:
                return response.json()
            except json.JSONDecodeError as exc:
                raise MalformedResponseError(f"{path}: body is not JSON") from exc
        raise BackendUnavailableError(f"{path}: {last_error}")


class RemoteLogitBackend:
    """Logit-tier client.

    The wire protocol exchanges token ids, so tokenizing free text needs a
    client-side vocabulary (same "vocab" list the service was built with).
    Without one, tokenize() is unavailable but id-level calls still work.
    """

    def __init__(
        self,
        base_url: str,
        api_key: Optional[str] = None,
        top_k: int = 64,
        vocab: Optional[Sequence[str]] = None,
        timeout: float = DEFAULT_TIMEOUT,
        transport: Optional[httpx.BaseTransport] = None,
    ):
        self._http = _HttpClient(base_url, api_key, timeout, transport)
        self.top_k = top_k
        self._vocab = [Token(i, s) for i, s in enumerate(vocab)] if vocab else None

    def tokenize(self, text: str) -> list[Token]:
        if self._vocab is None:
            raise BackendUnavailableError(
                "remote logit backend has no client-side vocabulary for tokenizing"
            )
        tokens: list[Token] = []
        pos = 0
        while pos < len(text):
            match = None
            for token in self._vocab:
                if text.startswith(token.surface, pos) and (
                    match is None or len(token.surface) > len(match.surface)
                ):
                    match = token
            if match is None:
                raise BackendUnavailableError(
                    f"cannot tokenize {text[pos:pos+12]!r} with the configured vocabulary"
                )
            tokens.append(match)
            pos += len(match.surface)
        return tokens

    def next_distribution(self, prefix: Sequence[Token]) -> LogitResult:
        payload = {"prefix_tokens": [t.id for t in prefix], "top_k": self.top_k}
        data = self._http.post("/v1/logits", payload)
        entries = data.get("entries")
        if not isinstance(entries, list):
            raise MalformedResponseError("/v1/logits: missing entries")
        distribution: dict[Token, float] = {}
        for entry in entries:
            try:
                token = Token(int(entry["token"]), str(entry["surface"]))
                logprob = float(entry["logprob"])
            except (KeyError, TypeError, ValueError) as exc:
                raise MalformedResponseError(f"/v1/logits: bad entry {entry!r}") from exc
            if logprob > 0:
                raise MalformedResponseError(
                    f"/v1/logits: positive logprob {logprob} for token {token.id}"
                )
            distribution[token] = logprob
        return LogitResult(distribution=distribution, prefix=tuple(prefix))

    def score_sequence(
        self, tokens: Sequence[Token], context: Sequence[Token] = ()
    ) -> float:
        # Top-k only: a step whose true token falls outside the returned slice
        # cannot be scored faithfully.
        prefix = list(context)
        total = 0.0
        for token in tokens:
            result = self.next_distribution(prefix)
            if token not in result.distribution:
                raise MalformedResponseError(
                    f"token {token.id} absent from top-{self.top_k} response; "
                    "raise top_k to score this sequence"
                )
            total += result.distribution[token]
            prefix.append(token)
        return total


class RemoteInstructBackend:
    def __init__(
        self,
        base_url: str,
        api_key: Optional[str] = None,
        timeout: float = DEFAULT_TIMEOUT,
        transport: Optional[httpx.BaseTransport] = None,
    ):
        self._http = _HttpClient(base_url, api_key, timeout, transport)
        self.calls: list[InstructRequest] = []

    def complete(self, request: InstructRequest) -> list[str]:
        self.calls.append(request)
        payload: dict = {
            "system": request.system_text,
            "user": request.user_text,
            "max_items": request.max_output_items,
        }
        if request.seed is not None:
            payload["seed"] = request.seed
        data = self._http.post("/v1/complete", payload)
        items = data.get("items")
        if not isinstance(items, list):
            raise MalformedResponseError("/v1/complete: missing items")
        cleaned = [str(item).strip() for item in items if str(item).strip()]
        if not cleaned:
            raise MalformedResponseError("/v1/complete: empty item list")
        return cleaned[: request.max_output_items]


def backends_from_env(environ: Optional[dict] = None) -> tuple[
    Optional[RemoteLogitBackend], Optional[RemoteInstructBackend]
]:
    """Build remote backends from PHRASELETTE_* environment variables."""
    env = os.environ if environ is None else environ
    api_key = env.get(ENV_API_KEY)
    logit_url = env.get(ENV_LOGIT_URL)
    instruct_url = env.get(ENV_INSTRUCT_URL)
    logit = RemoteLogitBackend(logit_url, api_key) if logit_url else None
    instruct = RemoteInstructBackend(instruct_url, api_key) if instruct_url else None
    return logit, instruct


# score_stepwise is re-exported for parity checks in tests.
__all__ = [
    "RemoteLogitBackend",
    "RemoteInstructBackend",
    "backends_from_env",
    "score_stepwise",
]
