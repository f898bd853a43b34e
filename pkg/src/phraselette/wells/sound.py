"""The sound well: phoneme constraints and pronunciation annotation.

The sound reference comes from the config's raw phonemes when given,
otherwise it is inferred by pronouncing the selection. Lexicon misses fall
back to G2P, so an odd word never breaks the run; only a selection with no
letters at all yields no reference.
"""

from __future__ import annotations

from ..constraints import Advice, Constraint
from ..errors import UnpronounceableError, ValidationError
from ..model import InletContext, WellConfig
from ..phonology import Phonology, SoundRef
from .base import Backends, Insight, WellDescriptor, WellOutput, register

_phonology = Phonology()

DEFAULT_MODE = "startsWith"


def sound_ref_for(cfg: WellConfig, ctx: InletContext) -> SoundRef | None:
    params = cfg.parameters
    mode = params.get("mode", DEFAULT_MODE)
    raw = params.get("phonemes")
    if raw:
        joined = raw if isinstance(raw, str) else " ".join(raw)
        return SoundRef.parse(joined, mode=mode)
    try:
        return SoundRef(phonemes=_phonology.phrase_phonemes(ctx.selection), mode=mode)
    except UnpronounceableError:
        return None


def emitted_constraints(cfg: WellConfig, ctx: InletContext) -> list[Constraint]:
    ref = sound_ref_for(cfg, ctx)
    if ref is None:
        return []
    return [
        Constraint(
            kind="soundRef",
            payload=ref.to_json(),
            source_well_id=cfg.well_id,
        )
    ]


def annotation_for(ctx: InletContext) -> dict:
    try:
        prons = _phonology.pronounce_phrase(ctx.selection)
    except UnpronounceableError:
        return {"annotation": "", "words": []}
    words = []
    for pron in prons:
        entry = {
            "word": pron.word,
            "phonemes": pron.rendered(),
            "source": pron.source,
        }
        alternates = _phonology.alternates(pron.word)
        if alternates:
            entry["alternates"] = [a.rendered() for a in alternates]
        words.append(entry)
    return {
        "annotation": " ".join(p.rendered() for p in prons),
        "words": words,
    }


def validate(cfg: WellConfig) -> None:
    params = cfg.parameters
    if params.get("mode", DEFAULT_MODE) not in ("startsWith", "endsWith", "contains", "rhymesWith"):
        raise ValidationError(f"sound well: bad mode {params.get('mode')!r}")
    if params.get("phonemes"):
        raw = params["phonemes"]
        SoundRef.parse(raw if isinstance(raw, str) else " ".join(raw))


def run(cfg: WellConfig, ctx: InletContext, advice: Advice,
        backends: Backends) -> WellOutput:
    validate(cfg)
    return WellOutput(
        well_id=cfg.well_id,
        generation=ctx.generation,
        insights=[Insight(kind="pronunciationAnnotation", body=annotation_for(ctx))],
        view_contribution="phonemes",
        emitted_constraints=emitted_constraints(cfg, ctx),
    )


register(WellDescriptor(
    kind="sound",
    run=run,
    constrains=True,
    insights=True,
    views=True,
    config_schema={
        "phonemes": "manual reference, e.g. \"K AE P\" (default: inferred from selection)",
        "mode": "startsWith | endsWith | contains | rhymesWith",
    },
    emitted_constraints=emitted_constraints,
    validate_config=validate,
))
