"""Core domain types: documents, inlets, rephrasings, and well configuration.

A Document is a working text plus a set of highlighted revision sites
("inlets"). Each inlet is a half-open character interval [start, end) over the
document text, using Unicode code-point offsets (Python string indices), so
ranges stay stable across languages.

Mutations follow a single-writer contract: the owner (service or CLI) applies
them sequentially; everyone else works on snapshots.
"""

from __future__ import annotations

import hashlib
import math
import re
import uuid
from copy import deepcopy
from dataclasses import dataclass, field
from typing import Optional

from .errors import (
    EmptyRangeError,
    OutOfBoundsError,
    OverlappingInletError,
    StaleGenerationError,
    UnknownInletError,
    ValidationError,
)

# The built-in well kinds; the wells registry is the live authority and may
# grow beyond these.
BUILTIN_WELL_KINDS = ("words", "thesaurus", "reader", "context", "sound", "dictionary")

# Kinds whose behavior is steered by a free-text description.
PROMPTED_KINDS = ("thesaurus", "reader", "dictionary")

_TOKEN_SPLIT = re.compile(r"(\s+)")


def new_id(prefix: str) -> str:
    return f"{prefix}-{uuid.uuid4().hex[:12]}"


@dataclass
class Inlet:
    """A highlighted span the writer wants rephrased.

    The generation counter increments on every run (and on accept), so
    suggestions produced for an older state of the span can be recognized as
    stale and dropped.
    """

    id: str
    start: int
    end: int
    active_well_ids: set[str] = field(default_factory=set)
    generation: int = 0

    @property
    def range(self) -> tuple[int, int]:
        return (self.start, self.end)

    def overlaps(self, start: int, end: int) -> bool:
        return self.start < end and start < self.end

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "start": self.start,
            "end": self.end,
            "activeWellIds": sorted(self.active_well_ids),
            "generation": self.generation,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Inlet":
        return cls(
            id=data["id"],
            start=data["start"],
            end=data["end"],
            active_well_ids=set(data.get("activeWellIds", [])),
            generation=data.get("generation", 0),
        )


@dataclass
class Document:
    """Working text plus inlets. Revision increments on every mutation."""

    text: str
    id: str = field(default_factory=lambda: new_id("doc"))
    inlets: list[Inlet] = field(default_factory=list)
    revision: int = 0

    def inlet(self, inlet_id: str) -> Inlet:
        for inlet in self.inlets:
            if inlet.id == inlet_id:
                return inlet
        raise UnknownInletError(f"no inlet {inlet_id!r} in document {self.id!r}")

    def snapshot(self) -> "Document":
        """Deep copy for concurrent readers; jobs hold snapshots."""
        return deepcopy(self)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "text": self.text,
            "inlets": [inlet.to_json() for inlet in self.inlets],
            "revision": self.revision,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Document":
        return cls(
            text=data["text"],
            id=data.get("id", new_id("doc")),
            inlets=[Inlet.from_json(i) for i in data.get("inlets", [])],
            revision=data.get("revision", 0),
        )


@dataclass
class TokenView:
    """Token-level annotation attached by view-providing wells.

    Tokens concatenate (including whitespace surfaces) back to the phrase
    text. Optional lenses: POS tag, log-probability (natural log, <= 0),
    phoneme symbols.
    """

    surface: str
    pos: Optional[str] = None
    log_prob: Optional[float] = None
    phonemes: Optional[list[str]] = None

    @property
    def is_word(self) -> bool:
        return bool(self.surface.strip())

    def to_json(self) -> dict:
        out: dict = {"surface": self.surface}
        if self.pos is not None:
            out["pos"] = self.pos
        if self.log_prob is not None and math.isfinite(self.log_prob):
            out["logProb"] = self.log_prob
        if self.phonemes is not None:
            out["phonemes"] = self.phonemes
        return out

    @classmethod
    def from_json(cls, data: dict) -> "TokenView":
        return cls(
            surface=data["surface"],
            pos=data.get("pos"),
            log_prob=data.get("logProb"),
            phonemes=data.get("phonemes"),
        )


def split_tokens(text: str) -> list[TokenView]:
    """Split text into word / whitespace runs, preserving every character."""
    return [TokenView(surface=piece) for piece in _TOKEN_SPLIT.split(text) if piece]


@dataclass
class Rephrasing:
    """A candidate replacement phrase with provenance and scores."""

    text: str
    well_id: str
    generation: int = 0
    tokens: list[TokenView] = field(default_factory=list)
    internal_score: float = 0.0
    constraint_scores: dict[str, float] = field(default_factory=dict)
    overall_score: float = 1.0
    total_log_prob: Optional[float] = None
    provenance: list[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.text:
            raise ValidationError("rephrasing text must be non-empty")
        if not self.tokens:
            self.tokens = split_tokens(self.text)
        if not self.provenance:
            self.provenance = [self.well_id]

    @property
    def id(self) -> str:
        digest = hashlib.sha1(
            f"{self.well_id}|{self.generation}|{self.text}".encode("utf-8")
        ).hexdigest()
        return f"r-{digest[:12]}"

    @property
    def fully_matched(self) -> bool:
        return all(score >= 1.0 for score in self.constraint_scores.values())

    def recompute_overall(self) -> float:
        """Overall score is the mean of constraint scores; 1.0 when none."""
        scores = list(self.constraint_scores.values())
        self.overall_score = sum(scores) / len(scores) if scores else 1.0
        return self.overall_score

    def to_json(self) -> dict:
        out = {
            "id": self.id,
            "text": self.text,
            "wellId": self.well_id,
            "generation": self.generation,
            "tokens": [t.to_json() for t in self.tokens],
            "internalScore": self.internal_score,
            "constraintScores": dict(sorted(self.constraint_scores.items())),
            "overallScore": self.overall_score,
            "fullyMatched": self.fully_matched,
            "provenance": list(self.provenance),
        }
        if self.total_log_prob is not None and math.isfinite(self.total_log_prob):
            # -inf means "impossible under the scoring model": it stays out of
            # the wire format but still fails band membership during scoring.
            out["totalLogProb"] = self.total_log_prob
        return out


@dataclass
class WellConfig:
    """Configuration for one well instance."""

    kind: str
    well_id: str = ""
    prompt_description: Optional[str] = None
    parameters: dict = field(default_factory=dict)

    def __post_init__(self):
        # Kinds are open-ended: the wells registry is the authority on what
        # exists, so extension wells need no change here.
        if not self.kind or not isinstance(self.kind, str):
            raise ValidationError(f"well kind must be a non-empty string, got {self.kind!r}")
        if not self.well_id:
            self.well_id = new_id(self.kind)
        if self.kind in PROMPTED_KINDS and not self.prompt_description:
            raise ValidationError(f"{self.kind} well requires a promptDescription")

    def to_json(self) -> dict:
        out: dict = {"wellId": self.well_id, "kind": self.kind, "parameters": self.parameters}
        if self.prompt_description is not None:
            out["promptDescription"] = self.prompt_description
        return out

    @classmethod
    def from_json(cls, data: dict) -> "WellConfig":
        return cls(
            kind=data["kind"],
            well_id=data.get("wellId", ""),
            prompt_description=data.get("promptDescription"),
            parameters=data.get("parameters", {}),
        )


# --- operations ---------------------------------------------------------------

def create_inlet(doc: Document, start: int, end: int, inlet_id: str = "") -> Inlet:
    """Add an inlet over [start, end). Ranges must be nonempty, in bounds, and
    disjoint from every existing inlet."""
    if start == end:
        raise EmptyRangeError(f"inlet range [{start}, {end}) is empty")
    if start < 0 or end > len(doc.text) or start > end:
        raise OutOfBoundsError(
            f"inlet range [{start}, {end}) outside document of length {len(doc.text)}"
        )
    for existing in doc.inlets:
        if existing.overlaps(start, end):
            raise OverlappingInletError(
                f"range [{start}, {end}) overlaps inlet {existing.id!r} "
                f"[{existing.start}, {existing.end})"
            )
    inlet = Inlet(id=inlet_id or new_id("inlet"), start=start, end=end)
    doc.inlets.append(inlet)
    doc.revision += 1
    return inlet


def delete_inlet(doc: Document, inlet_id: str) -> None:
    inlet = doc.inlet(inlet_id)
    doc.inlets.remove(inlet)
    doc.revision += 1


def accept_rephrasing(doc: Document, inlet_id: str, rephrasing: Rephrasing) -> Document:
    """Replace the inlet's span with the rephrasing text.

    The inlet is kept active and resized to the new text; inlets lying after
    the span shift by the length delta. Stale suggestions (generation below
    the inlet's current one) are rejected. Accepting bumps the inlet's
    generation so in-flight results against the old text are invalidated.
    """
    inlet = doc.inlet(inlet_id)
    if rephrasing.generation != inlet.generation:
        raise StaleGenerationError(
            f"rephrasing generation {rephrasing.generation} != inlet generation "
            f"{inlet.generation}"
        )
    old_start, old_end = inlet.start, inlet.end
    delta = len(rephrasing.text) - (old_end - old_start)
    doc.text = doc.text[:old_start] + rephrasing.text + doc.text[old_end:]
    inlet.end = old_end + delta
    for other in doc.inlets:
        if other.id != inlet.id and other.start >= old_end:
            other.start += delta
            other.end += delta
    inlet.generation += 1
    doc.revision += 1
    return doc


def slice_context(doc: Document, inlet_id: str) -> tuple[str, str, str]:
    """Return (before, selection, after); concatenation recovers the text."""
    inlet = doc.inlet(inlet_id)
    return (
        doc.text[: inlet.start],
        doc.text[inlet.start : inlet.end],
        doc.text[inlet.end :],
    )


def bump_generation(doc: Document, inlet_id: str) -> int:
    """Increment an inlet's generation ahead of a run; counts as a mutation."""
    inlet = doc.inlet(inlet_id)
    inlet.generation += 1
    doc.revision += 1
    return inlet.generation


@dataclass
class InletContext:
    """Immutable view of one inlet's surroundings, handed to wells.

    Wells never see the live document; the orchestrator slices a snapshot.
    """

    document_id: str
    inlet_id: str
    before: str
    selection: str
    after: str
    generation: int

    @classmethod
    def of(cls, doc: Document, inlet_id: str) -> "InletContext":
        before, selection, after = slice_context(doc, inlet_id)
        inlet = doc.inlet(inlet_id)
        return cls(
            document_id=doc.id,
            inlet_id=inlet.id,
            before=before,
            selection=selection,
            after=after,
            generation=inlet.generation,
        )

    @property
    def document_text(self) -> str:
        return self.before + self.selection + self.after
