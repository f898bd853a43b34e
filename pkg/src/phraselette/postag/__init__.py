"""Part-of-speech tagging for phrases.

The default tagger loads the bundled perceptron weights; a suffix-rule
fallback covers deployments without a weights file. Tagging is phrase-local
(rephrasings are scored before insertion into the document).
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Optional, Union

from .match import MATCH_MODES, tag_sequence_matches
from .perceptron import PerceptronTagger
from .rules import forced_tag, tag_words
from .tagset import TAGS, TAG_SET, is_tag


class Tagger:
    """Phrase tagger: perceptron when weights are available, rules otherwise."""

    def __init__(self, perceptron: Optional[PerceptronTagger] = None):
        self._perceptron = perceptron

    @classmethod
    def from_weights(cls, path: Union[str, Path]) -> "Tagger":
        return cls(PerceptronTagger.load(path))

    @classmethod
    def fallback(cls) -> "Tagger":
        return cls(None)

    @property
    def uses_perceptron(self) -> bool:
        return self._perceptron is not None

    def tag_phrase(self, phrase: str) -> list[tuple[str, str]]:
        """One (word, tag) pair per whitespace-delimited word; total function."""
        words = phrase.split()
        if not words:
            return []
        if self._perceptron is not None:
            tags = self._perceptron.tag(words)
            # Non-word tokens (punctuation, digits) bypass the model.
            tags = [forced_tag(w) or t for w, t in zip(words, tags)]
        else:
            tags = tag_words(words)
        return list(zip(words, tags))

    def tags_of(self, phrase: str) -> list[str]:
        return [tag for _, tag in self.tag_phrase(phrase)]


@lru_cache(maxsize=1)
def default_tagger() -> Tagger:
    weights = resources.files("phraselette.postag") / "data" / "tagger_weights.json"
    try:
        with resources.as_file(weights) as path:
            if path.exists():
                return Tagger.from_weights(path)
    except FileNotFoundError:
        pass
    return Tagger.fallback()


def tag_phrase(phrase: str) -> list[tuple[str, str]]:
    return default_tagger().tag_phrase(phrase)


__all__ = [
    "TAGS",
    "TAG_SET",
    "is_tag",
    "MATCH_MODES",
    "tag_sequence_matches",
    "Tagger",
    "PerceptronTagger",
    "default_tagger",
    "tag_phrase",
    "tag_words",
]
