"""Constrained beam search over the logit tier, plus histogram insights.

The search explores continuations of the text *before* an inlet; the inlet's
own text is never part of the prefix. A hypothesis is a token sequence whose
surface forms a complete phrase: at least one word, no dangling whitespace.
Every beam item that qualifies is emitted as a snapshot when it is created
(phrases can end at any word boundary), and also keeps growing; the budget
is `max_tokens` decoder steps.

With beam_width >= |V|^max_tokens no candidate is ever pruned, so the output
equals exhaustive enumeration of all qualifying sequences ranked by score --
the property the test oracle checks.

Ties break lexicographically by token-id sequence, for determinism.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import EmptyInputError, NoHypothesesError, ValidationError
from .lm.base import LogitBackend, Token

NEG_INF = float("-inf")


@dataclass
class BeamParams:
    beam_width: int = 64
    max_tokens: int = 8
    result_cap: int = 50
    band: Optional[tuple[float, float]] = None
    length_normalize: bool = False
    # Word-count advice; max_words also prunes hypotheses that grew past it.
    min_words: Optional[int] = None
    max_words: Optional[int] = None
    # Experimental POS prefix pruning, default off.
    pos_prune: bool = False
    pos_pattern: Optional[list[str]] = None
    pos_mode: str = "startsWith"

    def __post_init__(self):
        if self.beam_width < 1 or self.max_tokens < 1 or self.result_cap < 1:
            raise ValidationError("beam_width, max_tokens and result_cap must be >= 1")
        if self.band is not None:
            lo, hi = self.band
            if lo > hi:
                raise ValidationError(f"band must have min <= max, got {lo}..{hi}")


@dataclass(frozen=True)
class Hypothesis:
    tokens: tuple[Token, ...]
    log_prob: float
    step_log_probs: tuple[float, ...] = ()
    finished: bool = True

    @property
    def surface(self) -> str:
        return "".join(t.surface for t in self.tokens)

    @property
    def token_ids(self) -> tuple[int, ...]:
        return tuple(t.id for t in self.tokens)

    def score(self, length_normalize: bool) -> float:
        if length_normalize and self.tokens:
            return self.log_prob / len(self.tokens)
        return self.log_prob


def _is_phrase(surface: str) -> bool:
    return bool(surface.strip()) and surface == surface.rstrip()


def _word_count(surface: str) -> int:
    return len(surface.split())


def beam_search(
    before: str,
    params: BeamParams,
    backend: LogitBackend,
    tagger=None,
) -> list[Hypothesis]:
    """Top qualifying continuations of `before`, best first."""
    prefix = tuple(backend.tokenize(before))
    actives: list[tuple[tuple[Token, ...], float, tuple[float, ...]]] = [((), 0.0, ())]
    finished: list[Hypothesis] = []

    for _ in range(params.max_tokens):
        pool: list[tuple[tuple[Token, ...], float, tuple[float, ...]]] = []
        for tokens, log_prob, steps in actives:
            result = backend.next_distribution(prefix + tokens)
            for token in sorted(result.distribution, key=lambda t: t.id):
                step = result.distribution[token]
                if step == NEG_INF:
                    continue
                pool.append((tokens + (token,), log_prob + step, steps + (step,)))
        if not pool:
            break
        pool.sort(key=lambda c: (-c[1], tuple(t.id for t in c[0])))
        actives = []
        for tokens, log_prob, steps in pool[: params.beam_width]:
            surface = "".join(t.surface for t in tokens)
            words = _word_count(surface)
            if params.max_words is not None and words > params.max_words:
                continue  # grew past the word budget; no continuation can shrink it
            if _qualifies(surface, words, tokens, params, tagger):
                finished.append(
                    Hypothesis(tokens=tokens, log_prob=log_prob, step_log_probs=steps)
                )
            actives.append((tokens, log_prob, steps))

    if not finished:
        raise NoHypothesesError("no qualifying hypotheses within the token budget")
    finished.sort(
        key=lambda h: (-h.score(params.length_normalize), h.token_ids)
    )
    if params.band is not None:
        finished = apply_band(finished, params.band)
        if not finished:
            raise NoHypothesesError(
                f"all hypotheses pruned by band {params.band[0]}..{params.band[1]}"
            )
    return finished[: params.result_cap]


def _qualifies(surface: str, words: int, tokens: tuple[Token, ...],
               params: BeamParams, tagger) -> bool:
    if not _is_phrase(surface):
        return False
    if params.min_words is not None and words < params.min_words:
        return False
    if params.pos_prune and params.pos_pattern and tagger is not None:
        tags = tagger.tags_of(surface)
        pattern = params.pos_pattern
        if params.pos_mode in ("startsWith", "exact"):
            head = tags[: len(pattern)]
            if head != pattern[: len(head)]:
                return False
            if params.pos_mode == "exact" and len(tags) > len(pattern):
                return False
    return True


def apply_band(
    hypotheses: Sequence[Hypothesis], band: tuple[float, float]
) -> list[Hypothesis]:
    """Keep hypotheses with band[0] <= logProb <= band[1]; order preserved."""
    lo, hi = band
    if lo > hi:
        raise ValidationError(f"band must have min <= max, got {lo}..{hi}")
    return [h for h in hypotheses if lo <= h.log_prob <= hi]


@dataclass
class Histogram:
    bin_edges: list[float]
    counts: list[int]
    total: int = field(default=0)

    def __post_init__(self):
        if not self.total:
            self.total = sum(self.counts)

    def to_json(self) -> dict:
        return {"binEdges": self.bin_edges, "counts": self.counts, "total": self.total}


def histogram_of(hypotheses: Sequence[Hypothesis], bin_count: int = 20) -> Histogram:
    """Equal-width bins over [min, max] logProb; the final bin is
    right-inclusive so the maximum lands inside."""
    if not hypotheses:
        raise EmptyInputError("cannot histogram an empty hypothesis list")
    if bin_count < 1:
        raise ValidationError("bin_count must be >= 1")
    values = [h.log_prob for h in hypotheses]
    lo, hi = min(values), max(values)
    width = (hi - lo) / bin_count
    edges = [lo + i * width for i in range(bin_count)] + [hi]
    if width <= 0 or any(b <= a for a, b in zip(edges, edges[1:])):
        # Degenerate or vanishing spread: widen so the edges stay strictly
        # ascending even when the raw span underflows.
        pad = max(0.5, abs(lo) * 1e-9, abs(hi) * 1e-9)
        lo, hi = lo - pad, hi + pad
        width = (hi - lo) / bin_count
        edges = [lo + i * width for i in range(bin_count)] + [hi]
    counts = [0] * bin_count
    for value in values:
        index = min(int((value - lo) / width), bin_count - 1)
        counts[index] += 1
    return Histogram(bin_edges=edges, counts=counts, total=len(values))


def band_covering_all(hypotheses: Sequence[Hypothesis]) -> tuple[float, float]:
    values = [h.log_prob for h in hypotheses]
    return (min(values), max(values)) if values else (-math.inf, 0.0)
