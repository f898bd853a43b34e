"""Independent reference implementations used by tests.

The beam-search oracle enumerates every token sequence up to the budget,
scores it step by step against the backend, applies the same phrase
qualification rule, and ranks with the documented tie-break. It never calls
the beam search itself.
"""

from __future__ import annotations

import math
import random
from itertools import product

from phraselette.lm import MockLogitBackend
from phraselette.search import BeamParams


def _phrase_ok(surface: str) -> bool:
    return bool(surface.strip()) and surface == surface.rstrip()


def exhaustive_hypotheses(
    backend: MockLogitBackend, before: str, params: BeamParams
) -> list[tuple[tuple[int, ...], float]]:
    """All qualifying sequences of 1..max_tokens tokens, ranked like the
    search output: score desc, then token ids."""
    prefix = tuple(backend.tokenize(before))
    vocab = backend.vocab
    results = []
    for length in range(1, params.max_tokens + 1):
        for combo in product(vocab, repeat=length):
            log_prob = 0.0
            steps = []
            dead = False
            for i, token in enumerate(combo):
                dist = backend.next_distribution(prefix + combo[:i]).distribution
                step = dist.get(token, float("-inf"))
                if math.isinf(step):
                    dead = True
                    break
                steps.append(step)
                log_prob += step
            if dead:
                continue
            surface = "".join(t.surface for t in combo)
            if not _phrase_ok(surface):
                continue
            words = len(surface.split())
            if params.min_words is not None and words < params.min_words:
                continue
            if params.max_words is not None and words > params.max_words:
                continue
            score = log_prob / length if params.length_normalize else log_prob
            results.append((tuple(t.id for t in combo), log_prob, score))
    if params.band is not None:
        lo, hi = params.band
        results = [r for r in results if lo <= r[1] <= hi]
    results.sort(key=lambda r: (-r[2], r[0]))
    return [(ids, log_prob) for ids, log_prob, _ in results[: params.result_cap]]


def make_random_mock(rng: random.Random) -> MockLogitBackend:
    """A random small LM: word tokens plus whitespace-bearing tokens, with a
    mix of dense, sparse, and tied transition rows."""
    words = rng.sample(["gla", "zed", "wit", "h", "rai", "n", "barrow", "wheel"],
                       rng.randint(2, 5))
    vocab = list(words)
    if rng.random() < 0.7:
        vocab.append(" ")
    if rng.random() < 0.4:
        vocab.append(" " + rng.choice(["per", "via", "onto"]))
    vocab = vocab[:8]
    size = len(vocab)

    def random_row() -> dict[str, float]:
        support = rng.sample(range(size), rng.randint(1, size))
        if rng.random() < 0.3:
            # Uniform rows produce score ties, exercising the tie-break.
            return {str(i): 1.0 for i in support}
        return {str(i): rng.randint(1, 8) for i in support}

    transitions = {"": random_row()}
    for _ in range(rng.randint(0, 6)):
        context = ",".join(
            str(rng.randrange(size)) for _ in range(rng.randint(1, 2))
        )
        transitions[context] = random_row()
    return MockLogitBackend(vocab, transitions)
