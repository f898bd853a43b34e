"""Pronunciation lookup and sound matching.

Lexicon entries win; anything else goes through the G2P fallback, so
pronounce() is total for any word containing a letter. Matching is
stress-insensitive except for locating the rhyme anchor (the reference's last
primary-stressed vowel).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional

from ..errors import UnpronounceableError, ValidationError
from .arpabet import Phoneme, parse_phonemes, render, strip_stress
from .g2p import grapheme_to_phonemes
from .lexicon import Lexicon, bundled_lexicon

SOUND_MODES = ("startsWith", "endsWith", "contains", "rhymesWith")

_HAS_LETTER = re.compile(r"[^\W\d_]")
_WORD_RUN = re.compile(r"[A-Za-z']+")


@dataclass
class Pronunciation:
    word: str
    phonemes: list[Phoneme]
    source: str  # "lexicon" | "g2p"

    def __post_init__(self):
        if not self.phonemes:
            raise ValidationError(f"empty pronunciation for {self.word!r}")

    @property
    def syllables(self) -> int:
        return sum(1 for p in self.phonemes if p.is_vowel)

    def rendered(self, stress: bool = False) -> str:
        return render(self.phonemes, stress=stress)


@dataclass
class SoundRef:
    """A phoneme pattern plus how it should be applied."""

    phonemes: list[Phoneme]
    mode: str = "startsWith"

    def __post_init__(self):
        if not self.phonemes:
            raise ValidationError("sound reference needs at least one phoneme")
        if self.mode not in SOUND_MODES:
            raise ValidationError(f"unknown sound mode {self.mode!r}")

    @classmethod
    def parse(cls, raw: str, mode: str = "startsWith") -> "SoundRef":
        return cls(phonemes=parse_phonemes(raw), mode=mode)

    def to_json(self) -> dict:
        return {"phonemes": [str(p) for p in self.phonemes], "mode": self.mode}


class Phonology:
    """Pronunciation services over one lexicon. Pure and concurrency-safe."""

    def __init__(self, lexicon: Optional[Lexicon] = None):
        self.lexicon = lexicon if lexicon is not None else bundled_lexicon()

    def pronounce(self, word: str) -> Pronunciation:
        if not _HAS_LETTER.search(word):
            raise UnpronounceableError(f"{word!r} contains no letters")
        key = word.strip("'\"().,;:!?—–- \t").lower()
        entry = self.lexicon.lookup(key)
        if entry is not None:
            return Pronunciation(word=key, phonemes=list(entry), source="lexicon")
        return Pronunciation(word=key, phonemes=grapheme_to_phonemes(key), source="g2p")

    def alternates(self, word: str) -> list[Pronunciation]:
        key = word.strip("'\"().,;:!?—–- \t").lower()
        return [
            Pronunciation(word=key, phonemes=list(v), source="lexicon")
            for v in self.lexicon.variants(key)[1:]
        ]

    def pronounce_phrase(self, phrase: str) -> list[Pronunciation]:
        """Per-word pronunciations; nonletter runs are skipped, not errors."""
        words = _WORD_RUN.findall(phrase)
        prons = [self.pronounce(w) for w in words if _HAS_LETTER.search(w)]
        if not prons:
            raise UnpronounceableError(f"no pronounceable words in {phrase!r}")
        return prons

    def phrase_phonemes(self, phrase: str) -> list[Phoneme]:
        """Words concatenated in order, no pause phonemes between them."""
        out: list[Phoneme] = []
        for pron in self.pronounce_phrase(phrase):
            out.extend(pron.phonemes)
        return out

    def syllable_count(self, phrase: str) -> int:
        return sum(1 for p in self.phrase_phonemes(phrase) if p.is_vowel)

    def match_sound(self, phrase: str, ref: SoundRef) -> float:
        """1.0 when the phrase's phonemes satisfy the reference, else 0.0."""
        if not phrase.strip():
            raise ValidationError("cannot sound-match an empty phrase")
        phones = strip_stress(self.phrase_phonemes(phrase))
        if ref.mode == "rhymesWith":
            suffix = rhyme_suffix(ref.phonemes)
            return 1.0 if _ends_with(phones, suffix) else 0.0
        pattern = strip_stress(ref.phonemes)
        if ref.mode == "startsWith":
            return 1.0 if phones[: len(pattern)] == pattern else 0.0
        if ref.mode == "endsWith":
            return 1.0 if _ends_with(phones, pattern) else 0.0
        return 1.0 if _contains(phones, pattern) else 0.0


def rhyme_suffix(phonemes: Iterable[Phoneme]) -> tuple[str, ...]:
    """Stress-stripped suffix from the last primary-stressed vowel to the end.

    Fallback chain when no primary stress is marked: last secondary-stressed
    vowel, then last vowel of any kind.
    """
    phonemes = list(phonemes)
    anchor = None
    for wanted in (1, 2, None):
        for i in range(len(phonemes) - 1, -1, -1):
            p = phonemes[i]
            if p.is_vowel and (wanted is None or p.stress == wanted):
                anchor = i
                break
        if anchor is not None:
            break
    if anchor is None:
        raise ValidationError("rhyme reference has no vowel phoneme")
    return strip_stress(phonemes[anchor:])


def _ends_with(phones: tuple[str, ...], suffix: tuple[str, ...]) -> bool:
    return len(phones) >= len(suffix) and phones[len(phones) - len(suffix):] == suffix


def _contains(phones: tuple[str, ...], pattern: tuple[str, ...]) -> bool:
    return any(
        phones[i : i + len(pattern)] == pattern
        for i in range(len(phones) - len(pattern) + 1)
    )
