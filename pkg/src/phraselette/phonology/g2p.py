"""Rule-based grapheme-to-phoneme fallback for out-of-lexicon words.

Ordered rewrite rules: at each position the longest applicable pattern wins.
Deterministic, total for any input containing a letter, and every output has
at least one vowel phoneme (a schwa is inserted for vowel-less spellings like
"zzzpt" so syllable counting stays well-defined).

Quality target is "plausible", not "lexicon-grade": lexicon entries always
take precedence.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Optional

from .arpabet import VOWELS, Phoneme

_LETTERS = re.compile(r"[a-z']+")

_VOWEL_LETTERS = set("aeiou")


@dataclass(frozen=True)
class Rule:
    pattern: str
    phones: tuple[str, ...]
    # Optional guard over (word, start, end) of the matched span.
    when: Optional[Callable[[str, int, int], bool]] = None


def _at_start(word: str, i: int, j: int) -> bool:
    return i == 0

def _at_end(word: str, i: int, j: int) -> bool:
    return j == len(word)

def _after_vowel(word: str, i: int, j: int) -> bool:
    return i > 0 and word[i - 1] in _VOWEL_LETTERS

def _before_front(word: str, i: int, j: int) -> bool:
    return j < len(word) and word[j] in "eiy"

def _magic_e(word: str, i: int, j: int) -> bool:
    """Vowel + single consonant + final silent e (made/ride/code)."""
    return (
        j + 1 < len(word)
        and word[j] not in _VOWEL_LETTERS
        and word[j] not in "wxy"
        and j + 2 == len(word)
        and word[j + 1] == "e"
    )


_RULES: list[Rule] = [
    # Silent clusters and onsets.
    Rule("tch", ("CH",)),
    Rule("igh", ("AY",)),
    Rule("kn", ("N",), _at_start),
    Rule("wr", ("R",), _at_start),
    Rule("gn", ("N",), _at_start),
    Rule("ps", ("S",), _at_start),
    Rule("mb", ("M",), _at_end),
    Rule("gh", (), _after_vowel),
    Rule("gh", ("G",)),
    # Consonant digraphs.
    Rule("ch", ("CH",)),
    Rule("sh", ("SH",)),
    Rule("th", ("TH",)),
    Rule("ph", ("F",)),
    Rule("wh", ("W",)),
    Rule("ck", ("K",)),
    Rule("ng", ("NG",)),
    Rule("qu", ("K", "W")),
    Rule("dge", ("JH",)),
    # Common suffixes.
    Rule("tion", ("SH", "AH", "N"), _at_end),
    Rule("sion", ("ZH", "AH", "N"), _at_end),
    Rule("ture", ("CH", "ER"), _at_end),
    Rule("ous", ("AH", "S"), _at_end),
    Rule("ies", ("IY", "Z"), _at_end),
    Rule("ing", ("IH", "NG"), _at_end),
    # R-colored vowels.
    Rule("air", ("EH", "R")),
    Rule("ear", ("IH", "R")),
    Rule("eer", ("IH", "R")),
    Rule("ar", ("AA", "R")),
    Rule("er", ("ER",)),
    Rule("ir", ("ER",)),
    Rule("or", ("AO", "R")),
    Rule("ur", ("ER",)),
    # Vowel teams.
    Rule("eau", ("OW",)),
    Rule("ai", ("EY",)),
    Rule("ay", ("EY",)),
    Rule("au", ("AO",)),
    Rule("aw", ("AO",)),
    Rule("ea", ("IY",)),
    Rule("ee", ("IY",)),
    Rule("ei", ("EY",)),
    Rule("ey", ("EY",)),
    Rule("eu", ("UW",)),
    Rule("ew", ("UW",)),
    Rule("ie", ("AY",), _at_end),
    Rule("ie", ("IY",)),
    Rule("oa", ("OW",)),
    Rule("oe", ("OW",)),
    Rule("oi", ("OY",)),
    Rule("oy", ("OY",)),
    Rule("oo", ("UW",)),
    Rule("ou", ("AW",)),
    Rule("ow", ("OW",), _at_end),
    Rule("ow", ("AW",)),
    Rule("ue", ("UW",)),
    Rule("ui", ("UW",)),
    # Magic-e long vowels (made, ride, code, cube, these).
    Rule("a", ("EY",), _magic_e),
    Rule("e", ("IY",), _magic_e),
    Rule("i", ("AY",), _magic_e),
    Rule("o", ("OW",), _magic_e),
    Rule("u", ("UW",), _magic_e),
    # Context-sensitive consonants.
    Rule("c", ("S",), _before_front),
    Rule("c", ("K",)),
    Rule("g", ("JH",), _before_front),
    Rule("g", ("G",)),
    Rule("x", ("K", "S")),
    # Single vowels.
    Rule("a", ("AH",), _at_end),
    Rule("a", ("AE",)),
    Rule("e", (), _at_end),  # final silent e
    Rule("e", ("EH",)),
    Rule("i", ("IH",)),
    Rule("o", ("OW",), _at_end),
    Rule("o", ("AA",)),
    Rule("u", ("AH",)),
    Rule("y", ("IY",), _at_end),
    Rule("y", ("Y",), _at_start),
    Rule("y", ("IH",)),
    # Plain consonants.
    Rule("b", ("B",)),
    Rule("d", ("D",)),
    Rule("f", ("F",)),
    Rule("h", ("HH",)),
    Rule("j", ("JH",)),
    Rule("k", ("K",)),
    Rule("l", ("L",)),
    Rule("m", ("M",)),
    Rule("n", ("N",)),
    Rule("p", ("P",)),
    Rule("r", ("R",)),
    Rule("s", ("Z",), _at_end),
    Rule("s", ("S",)),
    Rule("t", ("T",)),
    Rule("v", ("V",)),
    Rule("w", ("W",)),
    Rule("z", ("Z",)),
    Rule("'", ()),
]


def grapheme_to_phonemes(word: str) -> list[Phoneme]:
    """Convert one word to phonemes; caller guarantees it contains a letter."""
    cleaned = "".join(_LETTERS.findall(word.lower()))
    symbols: list[str] = []
    i = 0
    while i < len(cleaned):
        for rule in _RULES:
            j = i + len(rule.pattern)
            if cleaned.startswith(rule.pattern, i) and (
                rule.when is None or rule.when(cleaned, i, j)
            ):
                symbols.extend(rule.phones)
                i = j
                break
        else:
            i += 1  # unmapped character (defensive; rules cover a-z and ')
    # Collapse immediate repeats left by doubled letters (ll, ss, zz).
    collapsed: list[str] = []
    for s in symbols:
        if not collapsed or collapsed[-1] != s:
            collapsed.append(s)
    if not any(s in VOWELS for s in collapsed):
        # Vowel-less spellings get a schwa so the word stays countable.
        insert_at = max(len(collapsed) - 1, 0)
        collapsed.insert(insert_at, "AH")
    # First vowel takes primary stress, the rest are unstressed.
    phonemes: list[Phoneme] = []
    stressed = False
    for s in collapsed:
        if s in VOWELS:
            phonemes.append(Phoneme(s, 1 if not stressed else 0))
            stressed = True
        else:
            phonemes.append(Phoneme(s))
    return phonemes
