"""The thesaurus well: style-described rephrasings from the instruct tier.

Its prompt carries the selection text and the active constraints' advice
clauses, and deliberately nothing of the surrounding document: starving the
generator of context changes the bent of its suggestions.
"""

from __future__ import annotations

from ..constraints import Advice
from ..errors import BackendUnavailableError
from ..lm.base import InstructRequest
from ..model import InletContext, Rephrasing, WellConfig
from .base import Backends, WellDescriptor, WellOutput, register
from .prompts import clause_block, render

DEFAULT_ITEMS = 12


def run(cfg: WellConfig, ctx: InletContext, advice: Advice,
        backends: Backends) -> WellOutput:
    if backends.instruct is None:
        raise BackendUnavailableError("thesaurus well needs an instruct backend")
    max_items = int(cfg.parameters.get("max_items", DEFAULT_ITEMS))
    request = InstructRequest(
        system_text=render("thesaurus_system", description=cfg.prompt_description,
                           max_items=max_items),
        user_text=render("thesaurus_user", max_items=max_items,
                         selection=ctx.selection,
                         clauses=clause_block(advice.prompt_clauses)),
        max_output_items=max_items,
        seed=backends.seed,
    )
    items = backends.instruct.complete(request)
    rephrasings = [
        Rephrasing(
            text=item,
            well_id=cfg.well_id,
            generation=ctx.generation,
            internal_score=(len(items) - i) / len(items),
        )
        for i, item in enumerate(items)
    ]
    return WellOutput(
        well_id=cfg.well_id,
        generation=ctx.generation,
        rephrasings=rephrasings,
        prompts=[{"step": "rephrase", "system": request.system_text,
                  "user": request.user_text}],
    )


register(WellDescriptor(
    kind="thesaurus",
    run=run,
    generates=True,
    needs_backend="instruct",
    config_schema={"max_items": "how many suggestions to request (default 12)"},
))
