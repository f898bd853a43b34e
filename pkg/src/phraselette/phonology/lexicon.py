"""CMU-format pronunciation lexicon loading.

File format: one entry per line, `WORD  PH PH PH`; alternate pronunciations
carry a "(1)", "(2)" suffix on the word; ";;;" lines are comments. The lexicon
is immutable after load.
"""

from __future__ import annotations

import re
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Optional, Union

from .arpabet import Phoneme, parse_phonemes

_VARIANT = re.compile(r"^(.*)\((\d+)\)$")


class Lexicon:
    def __init__(self, entries: dict[str, list[list[Phoneme]]]):
        self._entries = entries

    def __contains__(self, word: str) -> bool:
        return word.lower() in self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def lookup(self, word: str) -> Optional[list[Phoneme]]:
        """First (preferred) pronunciation, or None when absent."""
        variants = self._entries.get(word.lower())
        return variants[0] if variants else None

    def variants(self, word: str) -> list[list[Phoneme]]:
        return list(self._entries.get(word.lower(), []))

    def words(self) -> list[str]:
        return sorted(self._entries)

    @classmethod
    def parse(cls, text: str) -> "Lexicon":
        entries: dict[str, list[list[Phoneme]]] = {}
        order: dict[str, list[tuple[int, list[Phoneme]]]] = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith(";;;"):
                continue
            fields = line.split()
            head, phones = fields[0], fields[1:]
            if not phones:
                continue
            match = _VARIANT.match(head)
            word, rank = (match.group(1), int(match.group(2))) if match else (head, 0)
            order.setdefault(word.lower(), []).append((rank, parse_phonemes(phones)))
        for word, ranked in order.items():
            entries[word] = [phones for _, phones in sorted(ranked, key=lambda rp: rp[0])]
        return cls(entries)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "Lexicon":
        return cls.parse(Path(path).read_text(encoding="utf-8"))


@lru_cache(maxsize=None)
def bundled_lexicon() -> Lexicon:
    text = (
        resources.files("phraselette.phonology") / "data" / "cmudict_subset.txt"
    ).read_text(encoding="utf-8")
    return Lexicon.parse(text)
