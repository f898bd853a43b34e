"""Deterministic mock backends for tests and offline runs.

The mock logit backend is a transition table over an explicit vocabulary:

    {"vocab": ["glazed", " ", "with"],
     "transitions": {"": {"0": 0.5, "1": 0.5},
                     "0": {"1": 1.0}}}

Transition keys are context token ids joined by "," ("" is the unconditional
row). Lookup backs off from the longest matching context suffix down to "".
Rows are normalized at load so every distribution exp-sums to 1.

The mock instruct backend is a pure function of (request, seed): canned
responses matched by substring marker, with a seeded synthesizer as fallback.
"""

from __future__ import annotations

import hashlib
import json
import math
import random
from pathlib import Path
from typing import Optional, Sequence, Union

from ..errors import BackendUnavailableError, ContextTooLongError, ValidationError
from .base import InstructRequest, LogitResult, Token, score_stepwise

NEG_INF = float("-inf")


class MockLogitBackend:
    def __init__(
        self,
        vocab: Sequence[str],
        transitions: dict[str, dict[str, float]],
        max_context: Optional[int] = None,
    ):
        if not vocab:
            raise ValidationError("mock vocabulary must be non-empty")
        self.vocab = [Token(i, surface) for i, surface in enumerate(vocab)]
        self._by_surface = {t.surface: t for t in self.vocab}
        self._by_id = {t.id: t for t in self.vocab}
        self._extra: dict[str, Token] = {}
        self.max_context = max_context
        self.queries: list[tuple[Token, ...]] = []
        self._table: dict[str, dict[int, float]] = {}
        for key, row in transitions.items():
            total = sum(row.values())
            if total <= 0:
                raise ValidationError(f"transition row {key!r} has no probability mass")
            self._table[key] = {
                int(token_id): math.log(p / total) for token_id, p in row.items() if p > 0
            }
        if "" not in self._table:
            # Default root: uniform over the vocabulary.
            self._table[""] = {t.id: math.log(1.0 / len(self.vocab)) for t in self.vocab}

    @classmethod
    def from_fixture(cls, source: Union[str, Path, dict]) -> "MockLogitBackend":
        data = source if isinstance(source, dict) else json.loads(Path(source).read_text())
        return cls(data["vocab"], data.get("transitions", {}))

    # --- tokenization ---------------------------------------------------------

    def tokenize(self, text: str) -> list[Token]:
        """Greedy longest-match against the vocabulary.

        Unmatched spans become synthetic tokens (ids above the vocabulary) so
        detokenize(tokenize(text)) == text always holds.
        """
        tokens: list[Token] = []
        pos = 0
        while pos < len(text):
            match = None
            for token in self.vocab:
                if text.startswith(token.surface, pos) and (
                    match is None or len(token.surface) > len(match.surface)
                ):
                    match = token
            if match is None:
                run = self._unmatched_run(text, pos)
                match = self._synthetic(run)
            tokens.append(match)
            pos += len(match.surface)
        return tokens

    def _unmatched_run(self, text: str, pos: int) -> str:
        """Longest span from pos where no vocab entry matches, broken at
        whitespace/word boundaries to keep synthetic tokens word-like."""
        end = pos
        is_space = text[pos].isspace()
        while end < len(text) and text[end].isspace() == is_space:
            if end > pos and any(
                text.startswith(t.surface, end) for t in self.vocab
            ):
                break
            end += 1
        return text[pos:end]

    def _synthetic(self, surface: str) -> Token:
        token = self._extra.get(surface)
        if token is None:
            token = Token(len(self.vocab) + len(self._extra), surface)
            self._extra[surface] = token
        return token

    # --- distributions ---------------------------------------------------------

    def next_distribution(self, prefix: Sequence[Token]) -> LogitResult:
        prefix = tuple(prefix)
        if self.max_context is not None and len(prefix) > self.max_context:
            raise ContextTooLongError(
                f"prefix of {len(prefix)} tokens exceeds max context {self.max_context}"
            )
        self.queries.append(prefix)
        row = self._lookup(prefix)
        distribution = {
            token: row.get(token.id, NEG_INF) for token in self.vocab
        }
        return LogitResult(distribution=distribution, prefix=prefix)

    def _lookup(self, prefix: tuple[Token, ...]) -> dict[int, float]:
        ids = [t.id for t in prefix]
        for start in range(len(ids) + 1):
            key = ",".join(str(i) for i in ids[start:])
            if key in self._table:
                return self._table[key]
        return self._table[""]

    def score_sequence(
        self, tokens: Sequence[Token], context: Sequence[Token] = ()
    ) -> float:
        return score_stepwise(self, tokens, context)


# Fallback vocabulary for the synthesized instruct path; ordinary words so
# outputs stay phrase-like.
_WORD_BANK = (
    "amber", "bright", "brittle", "burnished", "cold", "drifting", "dappled",
    "echoing", "feral", "gleaming", "hollow", "keen", "lucent", "molten",
    "muted", "nimble", "pale", "quiet", "restless", "rough", "silvered",
    "slow", "sudden", "tidal", "vivid", "waning", "wind-worn", "woven",
)


class MockInstructBackend:
    """Canned-response instruct backend.

    `canned` maps a marker string to the items returned whenever the marker
    occurs in the request's system or user text. Markers are checked longest
    first so more specific prompts win. Without a match, items are synthesized
    deterministically from a hash of the request plus the seed.
    """

    def __init__(self, canned: Optional[dict[str, list[str]]] = None, fail: bool = False):
        self.canned = dict(canned or {})
        self.fail = fail
        self.calls: list[InstructRequest] = []

    @classmethod
    def from_fixture(cls, source: Union[str, Path, dict]) -> "MockInstructBackend":
        data = source if isinstance(source, dict) else json.loads(Path(source).read_text())
        return cls(canned=data.get("canned", {}))

    def complete(self, request: InstructRequest) -> list[str]:
        if self.fail:
            raise BackendUnavailableError("mock instruct backend configured to fail")
        self.calls.append(request)
        haystack = request.system_text + "\n" + request.user_text
        for marker in sorted(self.canned, key=len, reverse=True):
            if marker in haystack:
                items = [item for item in self.canned[marker] if item]
                if items:
                    return items[: request.max_output_items]
        return self._synthesize(request)

    def _synthesize(self, request: InstructRequest) -> list[str]:
        digest = hashlib.sha256(
            f"{request.system_text}\x1f{request.user_text}\x1f{request.seed}".encode()
        ).digest()
        rng = random.Random(int.from_bytes(digest[:8], "big"))
        count = min(request.max_output_items, rng.randint(3, 9))
        items = []
        for _ in range(count):
            words = rng.sample(_WORD_BANK, rng.randint(1, 3))
            items.append(" ".join(words))
        return items[: request.max_output_items]
