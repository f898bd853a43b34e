"""The reader well: a described persona critiques the selection, then
rewrites it in line with its own critique.

Two instruct calls: the first yields up to three bullet points of reaction
(surfaced as an insight), the second turns those reactions into rephrasings.
The second step aims for 5..12 items; a short list triggers one retry asking
for more, after which whatever exists is accepted.
"""

from __future__ import annotations

from ..constraints import Advice
from ..errors import BackendUnavailableError
from ..lm.base import InstructRequest
from ..model import InletContext, Rephrasing, WellConfig
from .base import Backends, Insight, WellDescriptor, WellOutput, register
from .prompts import clause_block, render, templates

MAX_BULLETS = 3
MIN_ITEMS = 5
MAX_ITEMS = 12


def run(cfg: WellConfig, ctx: InletContext, advice: Advice,
        backends: Backends) -> WellOutput:
    if backends.instruct is None:
        raise BackendUnavailableError("reader well needs an instruct backend")
    persona = cfg.prompt_description
    language_clause = (
        "" if cfg.parameters.get("any_language")
        else templates()["reader_language_clause"]
    )
    prompts = []

    critique = InstructRequest(
        system_text=render("reader_critique_system", persona=persona,
                           language_clause=language_clause),
        user_text=render("reader_critique_user", document=ctx.document_text,
                         selection=ctx.selection, max_bullets=MAX_BULLETS),
        max_output_items=MAX_BULLETS,
        seed=backends.seed,
    )
    bullets = backends.instruct.complete(critique)[:MAX_BULLETS]
    prompts.append({"step": "critique", "system": critique.system_text,
                    "user": critique.user_text})

    def rephrase_request(extra_clause: str = "") -> InstructRequest:
        clauses = clause_block(advice.prompt_clauses)
        if extra_clause:
            clauses = (clauses + "\n" if clauses else "") + extra_clause
        return InstructRequest(
            system_text=render("reader_rephrase_system", persona=persona,
                               language_clause=language_clause),
            user_text=render("reader_rephrase_user", document=ctx.document_text,
                             selection=ctx.selection,
                             bullets="\n".join(f"- {b}" for b in bullets),
                             max_items=MAX_ITEMS, clauses=clauses),
            max_output_items=MAX_ITEMS,
            seed=backends.seed,
        )

    request = rephrase_request()
    items = backends.instruct.complete(request)
    prompts.append({"step": "rephrase", "system": request.system_text,
                    "user": request.user_text})
    if len(items) < MIN_ITEMS:
        retry = rephrase_request(templates()["reader_retry_clause"])
        more = backends.instruct.complete(retry)
        prompts.append({"step": "rephrase-retry", "system": retry.system_text,
                        "user": retry.user_text})
        seen = set(items)
        items = items + [m for m in more if m not in seen]
    items = items[:MAX_ITEMS]

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
        insights=[Insight(kind="textBullets", body=bullets)],
        prompts=prompts,
    )


register(WellDescriptor(
    kind="reader",
    run=run,
    generates=True,
    insights=True,
    needs_backend="instruct",
    config_schema={"any_language": "disable the respond-in-document-language clause"},
))
