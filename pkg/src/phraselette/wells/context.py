"""The context well: beam search over what the language model expects next.

Searches continuations of the text before the inlet, taking no account of the
inlet's own text, then surfaces the top completions with per-token
log-probabilities, a histogram of the full score distribution, and (when a
band is configured) a probability-band constraint that applies across all
wells.
"""

from __future__ import annotations

from dataclasses import replace

from ..constraints import Advice, Constraint
from ..errors import BackendUnavailableError, NoHypothesesError
from ..model import InletContext, Rephrasing, TokenView, WellConfig
from ..search import BeamParams, Hypothesis, apply_band, beam_search, histogram_of
from .base import Backends, Insight, WellDescriptor, WellOutput, register

TOKENS_PER_WORD = 2
DEFAULT_BINS = 20


def params_from(cfg: WellConfig, advice: Advice) -> BeamParams:
    p = cfg.parameters
    band = None
    if "band_min" in p or "band_max" in p:
        band = (float(p.get("band_min", float("-inf"))), float(p.get("band_max", 0.0)))
    elif "band_min" in advice.search_params or "band_max" in advice.search_params:
        band = (
            float(advice.search_params.get("band_min", float("-inf"))),
            float(advice.search_params.get("band_max", 0.0)),
        )
    max_tokens = int(p.get("max_tokens", 8))
    min_words = advice.search_params.get("min_words")
    max_words = advice.search_params.get("max_words")
    if max_words is not None and "max_tokens" not in p:
        # Word-count advice sets the token budget.
        max_tokens = max_words * int(p.get("tokens_per_word", TOKENS_PER_WORD))
    pos_pattern = advice.search_params.get("posPattern")
    return BeamParams(
        beam_width=int(p.get("beam_width", 64)),
        max_tokens=max_tokens,
        result_cap=int(p.get("result_cap", 50)),
        band=band,
        length_normalize=bool(p.get("length_normalize", False)),
        min_words=min_words,
        max_words=max_words,
        pos_prune=bool(p.get("pos_prune", False)),
        pos_pattern=pos_pattern.split() if pos_pattern else None,
        pos_mode=advice.search_params.get("mode") or "startsWith",
    )


def emitted_constraints(cfg: WellConfig, ctx: InletContext) -> list[Constraint]:
    p = cfg.parameters
    if "band_min" not in p and "band_max" not in p:
        return []
    return [
        Constraint(
            kind="logProbBand",
            payload={"min": float(p.get("band_min", -1e9)),
                     "max": float(p.get("band_max", 0.0))},
            source_well_id=cfg.well_id,
        )
    ]


def to_rephrasing(hyp: Hypothesis, well_id: str, generation: int) -> Rephrasing:
    # Token views mirror the decoder's own tokens; a leading-space first
    # token is trimmed so the text reads as a phrase.
    views: list[TokenView] = []
    for i, (token, log_prob) in enumerate(zip(hyp.tokens, hyp.step_log_probs)):
        surface = token.surface.lstrip() if not views else token.surface
        if surface:
            views.append(TokenView(surface=surface, log_prob=log_prob))
    text = "".join(v.surface for v in views)
    return Rephrasing(
        text=text,
        well_id=well_id,
        generation=generation,
        tokens=views,
        internal_score=hyp.log_prob,
        total_log_prob=hyp.log_prob,
    )


def run(cfg: WellConfig, ctx: InletContext, advice: Advice,
        backends: Backends) -> WellOutput:
    if backends.logit is None:
        raise BackendUnavailableError("context well needs a logit backend")
    params = params_from(cfg, advice)
    # Search without the band: the histogram shows the full distribution the
    # band is dragged over; the band then filters what gets surfaced.
    search_params = replace(params, band=None)
    tagger = None
    if params.pos_prune and params.pos_pattern:
        from ..postag import default_tagger

        tagger = default_tagger()
    try:
        hypotheses = beam_search(ctx.before, search_params, backends.logit,
                                 tagger=tagger)
    except NoHypothesesError:
        hypotheses = []
    insights = []
    if hypotheses:
        insights.append(Insight(
            kind="histogram",
            body=histogram_of(hypotheses, int(cfg.parameters.get("bins", DEFAULT_BINS))),
        ))
    surfaced = apply_band(hypotheses, params.band) if params.band else hypotheses
    surfaced = surfaced[: params.result_cap]
    return WellOutput(
        well_id=cfg.well_id,
        generation=ctx.generation,
        rephrasings=[to_rephrasing(h, cfg.well_id, ctx.generation) for h in surfaced],
        insights=insights,
        view_contribution="logProb",
        emitted_constraints=emitted_constraints(cfg, ctx),
        prompts=[{"step": "search", "before": ctx.before}],
    )


register(WellDescriptor(
    kind="context",
    run=run,
    generates=True,
    constrains=True,
    insights=True,
    views=True,
    needs_backend="logit",
    config_schema={
        "beam_width": "beam width (default 64)",
        "max_tokens": "token budget per hypothesis (default 8)",
        "result_cap": "maximum surfaced rephrasings (default 50)",
        "band_min": "lower log-probability bound",
        "band_max": "upper log-probability bound",
        "length_normalize": "rank by logProb / token count",
        "bins": "histogram bin count (default 20)",
        "pos_prune": "experimental POS prefix pruning",
    },
    emitted_constraints=emitted_constraints,
))
