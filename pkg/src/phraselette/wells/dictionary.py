"""The dictionary well: one stylized definition of the selection per run.

Unlike the thesaurus, its prompt includes the text around the inlet, so the
definition can respond to how the phrase is actually used.
"""

from __future__ import annotations

from ..constraints import Advice
from ..errors import BackendUnavailableError, MalformedResponseError
from ..lm.base import InstructRequest
from ..model import InletContext, WellConfig
from .base import Backends, Insight, WellDescriptor, WellOutput, register
from .prompts import clause_block, render


def run(cfg: WellConfig, ctx: InletContext, advice: Advice,
        backends: Backends) -> WellOutput:
    if backends.instruct is None:
        raise BackendUnavailableError("dictionary well needs an instruct backend")
    request = InstructRequest(
        system_text=render("dictionary_system", description=cfg.prompt_description),
        user_text=render("dictionary_user", document=ctx.document_text,
                         selection=ctx.selection,
                         clauses=clause_block(advice.prompt_clauses)),
        max_output_items=1,
        seed=backends.seed,
    )
    items = backends.instruct.complete(request)
    if not items:
        raise MalformedResponseError("dictionary well got no definition back")
    return WellOutput(
        well_id=cfg.well_id,
        generation=ctx.generation,
        insights=[Insight(
            kind="definition",
            body={"description": cfg.prompt_description, "definition": items[0]},
        )],
        prompts=[{"step": "define", "system": request.system_text,
                  "user": request.user_text}],
    )


register(WellDescriptor(
    kind="dictionary",
    run=run,
    insights=True,
    needs_backend="instruct",
))
