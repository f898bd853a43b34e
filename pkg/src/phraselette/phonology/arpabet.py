"""The ARPAbet phoneme inventory used by CMU-format lexicons.

39 phonemes: 15 vowels (which carry stress digits 0/1/2) and 24 consonants.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from ..errors import ValidationError

VOWELS = frozenset(
    "AA AE AH AO AW AY EH ER EY IH IY OW OY UH UW".split()
)
CONSONANTS = frozenset(
    "B CH D DH F G HH JH K L M N NG P R S SH T TH V W Y Z ZH".split()
)
PHONEMES = VOWELS | CONSONANTS


@dataclass(frozen=True)
class Phoneme:
    """One ARPAbet symbol; vowels carry a stress digit (0 none, 1 primary, 2 secondary)."""

    symbol: str
    stress: Optional[int] = None

    def __post_init__(self):
        if self.symbol not in PHONEMES:
            raise ValidationError(f"{self.symbol!r} is not an ARPAbet phoneme")
        if self.is_vowel:
            if self.stress not in (0, 1, 2):
                raise ValidationError(f"vowel {self.symbol} needs a stress digit 0/1/2")
        elif self.stress is not None:
            raise ValidationError(f"consonant {self.symbol} cannot carry stress")

    @property
    def is_vowel(self) -> bool:
        return self.symbol in VOWELS

    def __str__(self) -> str:
        return f"{self.symbol}{self.stress}" if self.stress is not None else self.symbol


def parse_phoneme(raw: str) -> Phoneme:
    """Parse "AE2" or "K"; a bare vowel gets stress 0."""
    raw = raw.strip().upper()
    if raw and raw[-1].isdigit():
        symbol, stress = raw[:-1], int(raw[-1])
    else:
        symbol, stress = raw, None
    if symbol in VOWELS and stress is None:
        stress = 0
    return Phoneme(symbol, stress)


def parse_phonemes(raw: str | Iterable[str]) -> list[Phoneme]:
    parts = raw.split() if isinstance(raw, str) else list(raw)
    return [parse_phoneme(p) for p in parts]


def render(phonemes: Iterable[Phoneme], stress: bool = False) -> str:
    """Space-joined rendering; stress digits omitted unless asked for."""
    if stress:
        return " ".join(str(p) for p in phonemes)
    return " ".join(p.symbol for p in phonemes)


def strip_stress(phonemes: Iterable[Phoneme]) -> tuple[str, ...]:
    return tuple(p.symbol for p in phonemes)
