"""Tag-sequence matching modes shared by constraints and taggers."""

from __future__ import annotations

from typing import Sequence

from ..errors import ValidationError

MATCH_MODES = ("exact", "startsWith", "endsWith", "contains", "inOrder")


def tag_sequence_matches(
    tags: Sequence[str], pattern: Sequence[str], mode: str
) -> bool:
    """Test a tag sequence against a pattern.

    exact: full equality. startsWith / endsWith / contains: contiguous
    subsequence at that position. inOrder: possibly non-contiguous
    subsequence. Implications: exact => starts/ends => contains => inOrder.
    """
    if not pattern:
        raise ValidationError("match pattern must be non-empty")
    if mode not in MATCH_MODES:
        raise ValidationError(f"unknown match mode {mode!r}")
    tags = tuple(tags)
    pattern = tuple(pattern)
    if mode == "exact":
        return tags == pattern
    if mode == "startsWith":
        return tags[: len(pattern)] == pattern
    if mode == "endsWith":
        return len(tags) >= len(pattern) and tags[len(tags) - len(pattern):] == pattern
    if mode == "contains":
        return any(
            tags[i : i + len(pattern)] == pattern
            for i in range(len(tags) - len(pattern) + 1)
        )
    # inOrder: scan for the pattern as a subsequence.
    it = iter(tags)
    return all(any(tag == wanted for tag in it) for wanted in pattern)
