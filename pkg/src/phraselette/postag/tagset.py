"""The 17-tag coarse part-of-speech tagset.

Closed set; taggers must map every word to one of these (X for the
unanalyzable), never fail.
"""

TAGS = (
    "NOUN", "VERB", "ADJ", "ADV", "ADP", "PRON", "DET", "AUX", "NUM",
    "CONJ", "SCONJ", "PART", "PROPN", "INTJ", "PUNCT", "SYM", "X",
)

TAG_SET = frozenset(TAGS)


def is_tag(value: str) -> bool:
    return value in TAG_SET
