"""The basic word-constraint well. Always present; cannot be deactivated.

Emits part-of-speech and word-count constraints from its config and
contributes the POS view. It generates no rephrasings and no insights.
"""

from __future__ import annotations

from ..constraints import Advice, Constraint
from ..errors import ValidationError
from ..model import InletContext, WellConfig
from ..postag import MATCH_MODES, TAG_SET
from .base import Backends, WellDescriptor, WellOutput, register


def validate(cfg: WellConfig) -> None:
    params = cfg.parameters
    pos = params.get("pos")
    if pos is not None:
        if not isinstance(pos, list) or not pos or any(t not in TAG_SET for t in pos):
            raise ValidationError(f"words well: bad pos tag list {pos!r}")
        mode = params.get("mode", "contains")
        if mode not in MATCH_MODES:
            raise ValidationError(f"words well: bad match mode {mode!r}")
    words = params.get("words")
    if words is not None:
        try:
            lo, hi = words
        except (TypeError, ValueError):
            raise ValidationError(f"words well: word range must be [min, max], got {words!r}")
        if not (isinstance(lo, int) and isinstance(hi, int) and 0 <= lo <= hi):
            raise ValidationError(f"words well: need 0 <= min <= max, got {words!r}")


def emitted_constraints(cfg: WellConfig, ctx: InletContext) -> list[Constraint]:
    validate(cfg)
    params = cfg.parameters
    constraints = []
    if params.get("pos"):
        constraints.append(
            Constraint(
                kind="posSequence",
                payload={"tags": list(params["pos"])},
                mode=params.get("mode", "contains"),
                source_well_id=cfg.well_id,
            )
        )
    if params.get("words"):
        lo, hi = params["words"]
        constraints.append(
            Constraint(
                kind="wordCount",
                payload={"min": lo, "max": hi},
                source_well_id=cfg.well_id,
            )
        )
    return constraints


def run(cfg: WellConfig, ctx: InletContext, advice: Advice,
        backends: Backends) -> WellOutput:
    return WellOutput(
        well_id=cfg.well_id,
        generation=ctx.generation,
        emitted_constraints=emitted_constraints(cfg, ctx),
        view_contribution="pos",
    )


register(WellDescriptor(
    kind="words",
    run=run,
    constrains=True,
    views=True,
    config_schema={
        "pos": "list of POS tags the rephrasing should match",
        "mode": "exact | startsWith | endsWith | contains | inOrder",
        "words": "[min, max] word count",
    },
    emitted_constraints=emitted_constraints,
    validate_config=validate,
))
