"""Averaged perceptron tagger with a JSON weights format.

Greedy left-to-right decoding over hand-rolled contextual features, plus a
tag dictionary shortcut for words that were frequent and unambiguous in
training. The weights file is versioned and carries a magic header so a
mis-pointed path fails loudly instead of mis-tagging quietly.
"""

from __future__ import annotations

import json
import random
from collections import Counter, defaultdict
from pathlib import Path
from typing import Iterable, Sequence, Union

from ..errors import ValidationError

MAGIC = "phraselette-pos-tagger"
FORMAT_VERSION = 1

_START = ("-START-", "-START2-")
_END = ("-END-", "-END2-")


def _normalize(word: str) -> str:
    word = word.strip("\"'“”‘’().,;:!?—–…")
    if not word:
        return "!PUNCT"
    if any(ch.isdigit() for ch in word):
        return "!DIGITS"
    return word.lower()


def _features(i: int, word: str, context: Sequence[str],
              prev: str, prev2: str) -> dict[str, int]:
    """Feature counts for one position. `i` is offset into the padded context."""
    features: dict[str, int] = defaultdict(int)

    def add(name: str, *args: str) -> None:
        features[" ".join((name,) + args)] += 1

    add("bias")
    add("i suffix", word[-3:])
    add("i pref1", word[0])
    add("i-1 tag", prev)
    add("i-2 tag", prev2)
    add("i tag+i-2 tag", prev, prev2)
    add("i word", context[i])
    add("i-1 tag+i word", prev, context[i])
    add("i-1 word", context[i - 1])
    add("i-1 suffix", context[i - 1][-3:])
    add("i-2 word", context[i - 2])
    add("i+1 word", context[i + 1])
    add("i+1 suffix", context[i + 1][-3:])
    add("i+2 word", context[i + 2])
    if word and word[0].isupper():
        add("i title")
    if "-" in word:
        add("i hyphen")
    return features


class PerceptronTagger:
    def __init__(self):
        self.weights: dict[str, dict[str, float]] = {}
        self.tagdict: dict[str, str] = {}
        self.classes: list[str] = []

    # --- decoding ---------------------------------------------------------

    def tag(self, words: Sequence[str]) -> list[str]:
        if not self.classes:
            raise ValidationError("tagger has no trained weights")
        prev, prev2 = _START
        context = list(_START) + [_normalize(w) for w in words] + list(_END)
        tags: list[str] = []
        for i, word in enumerate(words):
            norm = context[i + 2]
            tag = self.tagdict.get(norm)
            if tag is None:
                feats = _features(i + 2, word, context, prev, prev2)
                tag = self._predict(feats)
            tags.append(tag)
            prev2, prev = prev, tag
        return tags

    def _predict(self, features: dict[str, int]) -> str:
        scores: dict[str, float] = defaultdict(float)
        for feat, value in features.items():
            if feat not in self.weights or value == 0:
                continue
            for tag, weight in self.weights[feat].items():
                scores[tag] += value * weight
        # Tie-break alphabetically for determinism.
        return max(self.classes, key=lambda t: (scores[t], t))

    # --- training ----------------------------------------------------------

    def train(
        self,
        sentences: Iterable[list[tuple[str, str]]],
        iterations: int = 8,
        seed: int = 13,
        tagdict_threshold: int = 2,
    ) -> None:
        sentences = list(sentences)
        self._build_tagdict(sentences, tagdict_threshold)
        self.classes = sorted({tag for sent in sentences for _, tag in sent})
        totals: dict[tuple[str, str], float] = defaultdict(float)
        stamps: dict[tuple[str, str], int] = defaultdict(int)
        instances = 0
        rng = random.Random(seed)
        for _ in range(iterations):
            rng.shuffle(sentences)
            for sentence in sentences:
                words = [w for w, _ in sentence]
                context = list(_START) + [_normalize(w) for w in words] + list(_END)
                prev, prev2 = _START
                for i, (word, truth) in enumerate(sentence):
                    instances += 1
                    norm = context[i + 2]
                    guess = self.tagdict.get(norm)
                    if guess is None:
                        feats = _features(i + 2, word, context, prev, prev2)
                        guess = self._predict(feats)
                        if guess != truth:
                            for feat, value in feats.items():
                                self._update(totals, stamps, instances, feat, truth, value)
                                self._update(totals, stamps, instances, feat, guess, -value)
                    prev2, prev = prev, guess
        self._average(totals, stamps, instances)

    def _build_tagdict(self, sentences, threshold: int) -> None:
        counts: dict[str, Counter] = defaultdict(Counter)
        for sentence in sentences:
            for word, tag in sentence:
                counts[_normalize(word)][tag] += 1
        for norm, tag_counts in counts.items():
            if len(tag_counts) == 1:
                tag, n = next(iter(tag_counts.items()))
                if n >= threshold:
                    self.tagdict[norm] = tag
        # Padding / punctuation sentinels never shortcut.
        self.tagdict.pop("!PUNCT", None)

    def _update(self, totals, stamps, instance, feat, tag, delta) -> None:
        row = self.weights.setdefault(feat, {})
        key = (feat, tag)
        totals[key] += (instance - stamps[key]) * row.get(tag, 0.0)
        stamps[key] = instance
        row[tag] = row.get(tag, 0.0) + delta

    def _average(self, totals, stamps, instances) -> None:
        for feat, row in self.weights.items():
            for tag, weight in list(row.items()):
                key = (feat, tag)
                total = totals[key] + (instances - stamps[key]) * weight
                averaged = round(total / instances, 4)
                if averaged:
                    row[tag] = averaged
                else:
                    del row[tag]
        self.weights = {f: row for f, row in self.weights.items() if row}

    # --- persistence --------------------------------------------------------

    def save(self, path: Union[str, Path]) -> None:
        blob = {
            "magic": MAGIC,
            "version": FORMAT_VERSION,
            "classes": self.classes,
            "tagdict": self.tagdict,
            "weights": self.weights,
        }
        Path(path).write_text(json.dumps(blob, sort_keys=True), encoding="utf-8")

    @classmethod
    def load(cls, source: Union[str, Path, dict]) -> "PerceptronTagger":
        data = source if isinstance(source, dict) else json.loads(Path(source).read_text())
        if data.get("magic") != MAGIC:
            raise ValidationError("not a phraselette tagger weights file")
        if data.get("version") != FORMAT_VERSION:
            raise ValidationError(
                f"unsupported tagger weights version {data.get('version')!r}"
            )
        tagger = cls()
        tagger.classes = list(data["classes"])
        tagger.tagdict = dict(data["tagdict"])
        tagger.weights = {f: dict(row) for f, row in data["weights"].items()}
        return tagger
