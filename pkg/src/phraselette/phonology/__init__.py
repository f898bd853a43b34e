from .arpabet import CONSONANTS, PHONEMES, VOWELS, Phoneme, parse_phoneme, parse_phonemes, render, strip_stress
from .core import Phonology, Pronunciation, SoundRef, rhyme_suffix, SOUND_MODES
from .g2p import grapheme_to_phonemes
from .lexicon import Lexicon, bundled_lexicon

__all__ = [
    "PHONEMES",
    "VOWELS",
    "CONSONANTS",
    "Phoneme",
    "parse_phoneme",
    "parse_phonemes",
    "render",
    "strip_stress",
    "Phonology",
    "Pronunciation",
    "SoundRef",
    "SOUND_MODES",
    "rhyme_suffix",
    "grapheme_to_phonemes",
    "Lexicon",
    "bundled_lexicon",
]
