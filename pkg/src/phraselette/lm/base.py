"""Capability tiers for language model access.

Two tiers, because consumers need different things:

* logit tier — raw token distributions. Drives the context search and the
  log-probability view annotation.
* instruct tier — prompted completions parsed into item lists. Drives the
  thesaurus, reader, and dictionary wells.

Backends are shareable and safe for concurrent calls; they hold no per-call
mutable state beyond optional logs/caches.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Protocol, Sequence, runtime_checkable

from ..errors import ValidationError


@dataclass(frozen=True)
class Token:
    """One vocabulary entry: a non-negative id and its surface string."""

    id: int
    surface: str


def detokenize(tokens: Sequence[Token]) -> str:
    return "".join(t.surface for t in tokens)


@dataclass
class LogitResult:
    """Next-token distribution for a prefix, in natural-log units.

    Mock backends return the full vocabulary (exp-sum == 1 within 1e-6);
    remote backends may return a top-k slice (exp-sum <= 1).
    """

    distribution: dict[Token, float]
    prefix: tuple[Token, ...]

    def top(self, k: Optional[int] = None) -> list[tuple[Token, float]]:
        """Entries sorted by log-probability descending, ties by token id."""
        entries = sorted(self.distribution.items(), key=lambda kv: (-kv[1], kv[0].id))
        return entries if k is None else entries[:k]


@dataclass(frozen=True)
class InstructRequest:
    system_text: str
    user_text: str
    max_output_items: int = 12
    seed: Optional[int] = None

    def __post_init__(self):
        if not self.user_text:
            raise ValidationError("instruct request needs a non-empty user text")
        if self.max_output_items < 1:
            raise ValidationError("max_output_items must be >= 1")


@runtime_checkable
class LogitBackend(Protocol):
    def tokenize(self, text: str) -> list[Token]: ...

    def next_distribution(self, prefix: Sequence[Token]) -> LogitResult: ...

    def score_sequence(
        self, tokens: Sequence[Token], context: Sequence[Token] = ()
    ) -> float: ...


@runtime_checkable
class InstructBackend(Protocol):
    def complete(self, request: InstructRequest) -> list[str]: ...


def score_stepwise(
    backend: LogitBackend, tokens: Sequence[Token], context: Sequence[Token] = ()
) -> float:
    """Sum of per-step log-probabilities of `tokens` given `context`.

    This is the reference implementation backends delegate to; it makes the
    additivity law score(s1 ++ s2 | ctx) = score(s1|ctx) + score(s2|ctx++s1)
    hold by construction.
    """
    if not tokens:
        raise ValidationError("cannot score an empty token sequence")
    prefix = list(context)
    total = 0.0
    for token in tokens:
        result = backend.next_distribution(prefix)
        total += result.distribution.get(token, float("-inf"))
        prefix.append(token)
    return total


_LIST_MARKER = re.compile(r"^\s*(?:[-*•]|\d+[.)])\s+")
_QUOTE_PAIRS = {('"', '"'), ("'", "'"), ("“", "”"), ("‘", "’")}


def parse_items(raw: str, max_items: Optional[int] = None) -> list[str]:
    """Parse a line-delimited completion into items.

    Lines are trimmed, blank lines dropped, list markers and surrounding
    quotes stripped.
    """
    items = []
    for line in raw.splitlines():
        line = _LIST_MARKER.sub("", line.strip()).strip()
        if len(line) >= 2 and (line[0], line[-1]) in _QUOTE_PAIRS:
            line = line[1:-1].strip()
        if line:
            items.append(line)
    return items[:max_items] if max_items is not None else items
