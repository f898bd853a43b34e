"""The phrasewell extension interface and registry.

A well is a configured text-transformation unit providing some combination of
rephrasings, constraints, insights, and views. New kinds register a
WellDescriptor; the orchestrator, API, and CLI discover them through the
registry without further wiring.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from ..constraints import Advice, Constraint
from ..errors import UnknownWellError, ValidationError
from ..lm.base import InstructBackend, LogitBackend
from ..model import InletContext, Rephrasing, WellConfig

VIEW_KINDS = ("pos", "logProb", "phonemes")
INSIGHT_KINDS = ("textBullets", "histogram", "definition", "pronunciationAnnotation")


@dataclass
class Insight:
    kind: str
    body: object

    def __post_init__(self):
        if self.kind not in INSIGHT_KINDS:
            raise ValidationError(f"unknown insight kind {self.kind!r}")

    def to_json(self) -> dict:
        body = self.body
        if hasattr(body, "to_json"):
            body = body.to_json()
        return {"kind": self.kind, "body": body}


@dataclass
class WellOutput:
    well_id: str
    generation: int
    rephrasings: list[Rephrasing] = field(default_factory=list)
    insights: list[Insight] = field(default_factory=list)
    view_contribution: Optional[str] = None
    emitted_constraints: list[Constraint] = field(default_factory=list)
    # Prompts / queries captured for inspection; not part of the wire format.
    prompts: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "wellId": self.well_id,
            "generation": self.generation,
            "rephrasings": [r.to_json() for r in self.rephrasings],
            "insights": [i.to_json() for i in self.insights],
            "viewContribution": self.view_contribution,
            "emittedConstraints": [c.to_json() for c in self.emitted_constraints],
        }


@dataclass
class Backends:
    """What a well may call. Wells degrade individually when a tier is down."""

    logit: Optional[LogitBackend] = None
    instruct: Optional[InstructBackend] = None
    seed: Optional[int] = None


RunFn = Callable[[WellConfig, InletContext, Advice, Backends], WellOutput]
ConstraintsFn = Callable[[WellConfig, InletContext], list[Constraint]]
ValidateFn = Callable[[WellConfig], None]


@dataclass(frozen=True)
class WellDescriptor:
    kind: str
    run: RunFn
    generates: bool = False
    constrains: bool = False
    insights: bool = False
    views: bool = False
    needs_backend: Optional[str] = None  # "logit" | "instruct" | None
    config_schema: dict = field(default_factory=dict)
    emitted_constraints: Optional[ConstraintsFn] = None
    validate_config: Optional[ValidateFn] = None

    def constraints_for(self, cfg: WellConfig, ctx: InletContext) -> list[Constraint]:
        if self.emitted_constraints is None:
            return []
        return self.emitted_constraints(cfg, ctx)


_REGISTRY: dict[str, WellDescriptor] = {}


def register(descriptor: WellDescriptor) -> WellDescriptor:
    if descriptor.kind in _REGISTRY:
        raise ValidationError(f"well kind {descriptor.kind!r} already registered")
    _REGISTRY[descriptor.kind] = descriptor
    return descriptor


def unregister(kind: str) -> None:
    _REGISTRY.pop(kind, None)


def get_well(kind: str) -> WellDescriptor:
    try:
        return _REGISTRY[kind]
    except KeyError:
        raise UnknownWellError(f"no well kind {kind!r} registered") from None


def registered_kinds() -> list[str]:
    return sorted(_REGISTRY)


def validate_config(cfg: WellConfig) -> None:
    descriptor = get_well(cfg.kind)
    if descriptor.validate_config is not None:
        descriptor.validate_config(cfg)
