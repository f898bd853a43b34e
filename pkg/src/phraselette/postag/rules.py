"""Suffix-heuristic fallback tagger, used when no trained weights are configured.

Closed-class lookup first, then morphology, then a NOUN default for ordinary
letter-bearing words. Tokens that mix letters and digits fall through to X;
pure digits are NUM, pure punctuation PUNCT, other marks SYM.
"""

from __future__ import annotations

import re

_CLOSED_CLASS = {
    "DET": {
        "the", "a", "an", "this", "that", "these", "those", "each", "every",
        "some", "any", "no", "all", "both", "either", "neither", "another",
    },
    "PRON": {
        "i", "you", "he", "she", "it", "we", "they", "me", "him", "her", "us",
        "them", "my", "your", "his", "its", "our", "their", "mine", "yours",
        "hers", "ours", "theirs", "myself", "yourself", "himself", "herself",
        "itself", "ourselves", "themselves", "who", "whom", "whose", "what",
        "something", "anything", "nothing", "everything", "someone", "anyone",
        "everyone", "one's",
    },
    "ADP": {
        "in", "on", "at", "by", "with", "from", "of", "for", "onto", "into",
        "over", "under", "through", "between", "against", "during", "without",
        "within", "upon", "per", "via", "across", "along", "around", "behind",
        "below", "beneath", "beside", "besides", "among", "toward", "towards",
        "near", "off", "past", "until", "till", "as", "like", "about", "above",
        "after", "before", "down", "up", "out", "to",
    },
    "AUX": {
        "am", "is", "are", "was", "were", "be", "been", "being", "will",
        "would", "can", "could", "shall", "should", "may", "might", "must",
        "do", "does", "did", "has", "have", "had",
    },
    "CONJ": {"and", "or", "but", "nor", "yet"},
    "SCONJ": {"because", "although", "though", "while", "if", "unless",
              "since", "whereas", "whether", "when", "where", "how", "why"},
    "PART": {"not", "n't", "'s"},
    "INTJ": {"oh", "ah", "hey", "wow", "alas", "yes", "please", "hello"},
}

_LOOKUP = {
    word: tag for tag, words in _CLOSED_CLASS.items() for word in words
}

_NUMBER_WORDS = {
    "zero", "one", "two", "three", "four", "five", "six", "seven", "eight",
    "nine", "ten", "eleven", "twelve", "twenty", "thirty", "forty", "fifty",
    "hundred", "thousand", "million",
}

_ADV_SUFFIXES = ("ly",)
_VERB_SUFFIXES = ("ing", "ed", "ize", "izes", "ized", "ise", "ises", "ised",
                  "ify", "ifies", "ified", "ate", "ates", "ated", "en")
_ADJ_SUFFIXES = ("ous", "ful", "less", "ish", "ive", "ic", "al", "able",
                 "ible", "est", "ant", "ent")
_NOUN_SUFFIXES = ("ness", "ment", "tion", "sion", "ity", "ism", "ist", "ance",
                  "ence", "ship", "hood", "dom", "er", "or", "ure")

_EDGE_PUNCT = "\"'“”‘’().,;:!?—–-…"
_HAS_LETTER = re.compile(r"[^\W\d_]")
_HAS_DIGIT = re.compile(r"\d")
_PUNCT_ONLY = re.compile(r"^[\"'“”‘’().,;:!?—–\-…*]+$")


def forced_tag(token: str) -> str | None:
    """Tag for tokens that are not ordinary words (punctuation, numbers,
    symbols, letter-digit hybrids); None for anything a lexical tagger
    should handle."""
    stripped = token.strip(_EDGE_PUNCT)
    if not stripped:
        return "PUNCT" if _PUNCT_ONLY.match(token) else "SYM"
    if not _HAS_LETTER.search(stripped):
        return "NUM" if _HAS_DIGIT.search(stripped) else "SYM"
    if _HAS_DIGIT.search(stripped):
        return "X"
    return None


def tag_word(token: str, sentence_initial: bool = False) -> str:
    forced = forced_tag(token)
    if forced is not None:
        return forced
    stripped = token.strip(_EDGE_PUNCT)
    lower = stripped.lower()
    if lower in _LOOKUP:
        return _LOOKUP[lower]
    if lower in _NUMBER_WORDS:
        return "NUM"
    if stripped[0].isupper() and not sentence_initial:
        return "PROPN"
    for suffix in _ADV_SUFFIXES:
        if lower.endswith(suffix) and len(lower) > len(suffix) + 1:
            return "ADV"
    for suffix in _VERB_SUFFIXES:
        if lower.endswith(suffix) and len(lower) > len(suffix) + 1:
            return "VERB"
    for suffix in _ADJ_SUFFIXES:
        if lower.endswith(suffix) and len(lower) > len(suffix) + 1:
            return "ADJ"
    for suffix in _NOUN_SUFFIXES:
        if lower.endswith(suffix) and len(lower) > len(suffix) + 1:
            return "NOUN"
    return "NOUN"


def tag_words(words: list[str]) -> list[str]:
    return [tag_word(w, sentence_initial=(i == 0)) for i, w in enumerate(words)]
