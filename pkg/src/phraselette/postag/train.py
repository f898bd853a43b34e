"""Retrain the bundled tagger weights from the packaged corpus.

Usage: python -m phraselette.postag.train [corpus] [output]
"""

from __future__ import annotations

import sys
from pathlib import Path

from .perceptron import PerceptronTagger

_DATA = Path(__file__).parent / "data"


def load_tagged_corpus(path) -> list[list[tuple[str, str]]]:
    """Parse word_TAG lines; '#' lines are comments."""
    sentences = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        pairs = []
        for token in line.split():
            word, _, tag = token.rpartition("_")
            pairs.append((word, tag))
        sentences.append(pairs)
    return sentences


def main(argv: list[str]) -> int:
    corpus = Path(argv[1]) if len(argv) > 1 else _DATA / "train_corpus.txt"
    output = Path(argv[2]) if len(argv) > 2 else _DATA / "tagger_weights.json"
    sentences = load_tagged_corpus(corpus)
    tagger = PerceptronTagger()
    tagger.train(sentences)
    tagger.save(output)
    correct = total = 0
    for sentence in sentences:
        tags = tagger.tag([w for w, _ in sentence])
        for (_, truth), guess in zip(sentence, tags):
            correct += guess == truth
            total += 1
    print(f"trained on {len(sentences)} phrases ({total} tokens); "
          f"training accuracy {correct / total:.3f}; wrote {output}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main(sys.argv))
