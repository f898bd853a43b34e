"""Typed constraints over phrases: definition, advice, and scoring.

Five constraint kinds. Symbolic kinds (posSequence, soundRef) score binary;
count kinds (wordCount, syllableCount) score graded so near-misses sort above
far misses instead of tying at zero; logProbBand is a membership test against
the phrase's rescored log-probability.

A constraint applies to the rephrasings of every well, not just the well that
emitted it. Scoring is soft: non-matching rephrasings are down-ranked by the
pool, never dropped (the context search's own band is the one hard filter).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Optional

from .errors import MissingAnnotationError, ValidationError
from .model import Rephrasing
from .phonology import Phonology, SoundRef, render
from .postag import MATCH_MODES, TAG_SET, Tagger, tag_sequence_matches

CONSTRAINT_KINDS = ("posSequence", "soundRef", "wordCount", "syllableCount", "logProbBand")

# Wells that consume advice as prompt clauses.
INSTRUCT_TARGETS = ("thesaurus", "reader", "dictionary")

_MODE_PHRASES = {
    "exact": "exactly match",
    "startsWith": "begin with",
    "endsWith": "end with",
    "contains": "contain",
    "inOrder": "contain in order",
}

_SOUND_PHRASES = {
    "startsWith": "starts with",
    "endsWith": "ends with",
    "contains": "contains",
    "rhymesWith": "rhymes with",
}


@dataclass
class Constraint:
    kind: str
    payload: dict
    mode: Optional[str] = None
    source_well_id: str = ""
    id: str = field(default="")

    def __post_init__(self):
        if self.kind not in CONSTRAINT_KINDS:
            raise ValidationError(f"unknown constraint kind {self.kind!r}")
        if not self.id:
            # Content-derived id: the same predicate gets the same id across
            # runs, which keeps mock-seeded output byte-identical.
            digest = hashlib.sha1(json.dumps(
                [self.kind, self.mode, self.payload, self.source_well_id],
                sort_keys=True, default=str,
            ).encode("utf-8")).hexdigest()
            self.id = f"c-{self.kind}-{digest[:8]}"
        if self.kind == "posSequence":
            tags = self.payload.get("tags")
            if not tags or any(t not in TAG_SET for t in tags):
                raise ValidationError(f"posSequence needs tags from the tagset, got {tags!r}")
            if self.mode not in MATCH_MODES:
                raise ValidationError(f"posSequence needs a match mode, got {self.mode!r}")
        elif self.kind == "soundRef":
            # Validates phonemes and mode on construction.
            self._sound_ref()
        elif self.kind in ("wordCount", "syllableCount"):
            lo, hi = self._range()
            if not (isinstance(lo, int) and isinstance(hi, int)) or lo > hi or lo < 0:
                raise ValidationError(f"{self.kind} range must be 0 <= min <= max, got {lo}..{hi}")
        elif self.kind == "logProbBand":
            lo, hi = self._range()
            if lo > hi:
                raise ValidationError(f"band must have min <= max, got {lo}..{hi}")
            if lo > 0 or hi > 0:
                raise ValidationError("log-probability bounds must be <= 0")

    def _range(self) -> tuple:
        try:
            return self.payload["min"], self.payload["max"]
        except KeyError as exc:
            raise ValidationError(f"{self.kind} payload needs min and max") from exc

    def _sound_ref(self) -> SoundRef:
        return SoundRef.parse(
            " ".join(self.payload.get("phonemes", [])),
            mode=self.payload.get("mode", "startsWith"),
        )

    def to_json(self) -> dict:
        out: dict = {
            "id": self.id,
            "kind": self.kind,
            "payload": self.payload,
            "sourceWellId": self.source_well_id,
        }
        if self.mode is not None:
            out["mode"] = self.mode
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Constraint":
        return cls(
            kind=data["kind"],
            payload=data["payload"],
            mode=data.get("mode"),
            source_well_id=data.get("sourceWellId", ""),
            id=data.get("id", ""),
        )


@dataclass
class Advice:
    """Constraint guidance for a generator: prompt clauses for instruct wells,
    search parameters for the beam decoder."""

    prompt_clauses: list[str] = field(default_factory=list)
    search_params: dict = field(default_factory=dict)
    hard_filter: Optional[str] = None

    @property
    def empty(self) -> bool:
        return not (self.prompt_clauses or self.search_params or self.hard_filter)

    def merge(self, other: "Advice") -> "Advice":
        return Advice(
            prompt_clauses=self.prompt_clauses + other.prompt_clauses,
            search_params={**self.search_params, **other.search_params},
            hard_filter=other.hard_filter or self.hard_filter,
        )


def advice_for(constraint: Constraint, target_well_kind: str) -> Advice:
    """Translate one constraint into advice for one target well kind.

    Instruct-tier wells get plain-English prompt clauses; the context well
    gets beam-search parameters. logProbBand for instruct wells deliberately
    yields empty advice: the band is applied post-hoc by rescoring, not by
    prompting.
    """
    kind = constraint.kind
    to_instruct = target_well_kind in INSTRUCT_TARGETS
    if kind == "wordCount":
        lo, hi = constraint._range()
        if to_instruct:
            return Advice(prompt_clauses=[f"aim to produce between {lo} and {hi} words"])
        if target_well_kind == "context":
            return Advice(search_params={"min_words": lo, "max_words": hi})
    elif kind == "syllableCount":
        lo, hi = constraint._range()
        if to_instruct:
            return Advice(
                prompt_clauses=[f"aim for between {lo} and {hi} syllables in total"]
            )
    elif kind == "posSequence":
        tags = " ".join(constraint.payload["tags"])
        if to_instruct:
            phrase = _MODE_PHRASES[constraint.mode or "contains"]
            return Advice(
                prompt_clauses=[
                    f'the words\' parts of speech should {phrase} the pattern "{tags}"'
                ]
            )
        if target_well_kind == "context":
            return Advice(search_params={"posPattern": tags, "mode": constraint.mode})
    elif kind == "soundRef":
        ref = constraint._sound_ref()
        if to_instruct:
            phrase = _SOUND_PHRASES[ref.mode]
            rendered = render(ref.phonemes)
            return Advice(
                prompt_clauses=[
                    f'prefer phrases whose pronunciation {phrase} the phoneme '
                    f'sequence "{rendered}"'
                ]
            )
    elif kind == "logProbBand":
        if target_well_kind == "context":
            lo, hi = constraint._range()
            return Advice(
                search_params={"band_min": lo, "band_max": hi},
                hard_filter="logProbBand",
            )
    return Advice()


def advice_bundle(constraints: list[Constraint], target_well_kind: str) -> Advice:
    """Merged advice from all active constraints for one target well."""
    merged = Advice()
    for constraint in constraints:
        merged = merged.merge(advice_for(constraint, target_well_kind))
    return merged


class ConstraintScorer:
    """Scores rephrasings against constraints.

    Pure given its phonology/tagger collaborators; raises MissingAnnotation
    when a rephrasing lacks an annotation the constraint needs, so the
    orchestrator can annotate on demand and retry.
    """

    def __init__(self, phonology: Optional[Phonology] = None,
                 tagger: Optional[Tagger] = None):
        self._phonology = phonology or Phonology()
        self._tagger = tagger

    def score(self, constraint: Constraint, rephrasing: Rephrasing) -> float:
        kind = constraint.kind
        if kind == "wordCount":
            return _graded(len(rephrasing.text.split()), *constraint._range())
        if kind == "syllableCount":
            return _graded(
                self._phonology.syllable_count(rephrasing.text), *constraint._range()
            )
        if kind == "soundRef":
            try:
                return self._phonology.match_sound(rephrasing.text, constraint._sound_ref())
            except ValidationError:
                return 0.0  # nothing pronounceable in the phrase
        if kind == "posSequence":
            tags = [t.pos for t in rephrasing.tokens if t.is_word]
            if not tags or any(tag is None for tag in tags):
                raise MissingAnnotationError("pos", constraint.id)
            matched = tag_sequence_matches(
                tags, constraint.payload["tags"], constraint.mode or "contains"
            )
            return 1.0 if matched else 0.0
        # logProbBand
        if rephrasing.total_log_prob is None:
            raise MissingAnnotationError("totalLogProb", constraint.id)
        lo, hi = constraint._range()
        return 1.0 if lo <= rephrasing.total_log_prob <= hi else 0.0

    def score_all(
        self, constraints: list[Constraint], rephrasing: Rephrasing
    ) -> tuple[dict[str, float], float]:
        """Score every constraint and fold into the overall mean.

        Mutates the rephrasing's score fields (they are the canonical home).
        """
        rephrasing.constraint_scores = {
            c.id: self.score(c, rephrasing) for c in constraints
        }
        return rephrasing.constraint_scores, rephrasing.recompute_overall()


def _graded(value: int, lo: int, hi: int) -> float:
    """1.0 inside [lo, hi]; decays linearly with distance outside, over a
    width of max(range span, 1)."""
    if lo <= value <= hi:
        return 1.0
    distance = (lo - value) if value < lo else (value - hi)
    width = max(hi - lo, 1)
    return max(0.0, 1.0 - distance / width)
