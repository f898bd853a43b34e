"""Runs active wells for an inlet, pools their rephrasings, annotates them
with the active views, scores them against every active constraint, and
exposes the deduplicated, ordered result.

Wells execute independently: one slow or failing well degrades that well
alone. The pool is append-only within a job; ordering happens on read.
Every output is tagged with the inlet generation current at launch, so
results arriving after a newer run are recognizably stale.
"""

from __future__ import annotations

import hashlib
import itertools
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .constraints import Constraint, ConstraintScorer, advice_bundle
from .errors import (
    MissingAnnotationError,
    NoActiveWellsError,
    PhraseletteError,
    ValidationError,
)
from .lm.base import LogitBackend
from .model import Document, InletContext, Rephrasing, WellConfig, bump_generation
from .phonology import Phonology
from .postag import Tagger, default_tagger
from .wells import Backends, WellOutput, get_well

# Stable provenance colors, assigned engine-side so every client agrees.
PALETTE = (
    "#e6194b", "#3cb44b", "#c09206", "#4363d8", "#f58231",
    "#911eb4", "#46f0f0", "#f032e6", "#7a9e2c", "#008080",
)


def well_color(well_id: str) -> str:
    digest = hashlib.sha256(well_id.encode("utf-8")).digest()
    return PALETTE[digest[0] % len(PALETTE)]


@dataclass
class RunJob:
    job_id: str
    inlet_id: str
    generation: int
    per_well_status: dict[str, str]
    pool: list[Rephrasing] = field(default_factory=list)
    insights: list[dict] = field(default_factory=list)
    prompts: dict[str, list[dict]] = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def done(self) -> bool:
        return all(not s.startswith("pending") for s in self.per_well_status.values())

    def merge(self, output: WellOutput) -> None:
        """Fold one well's completed output into the pool (append-only)."""
        with self._lock:
            if output.generation != self.generation:
                # Stale output from an older run; drop without corrupting state.
                self.per_well_status[output.well_id] = "stale"
                return
            self.pool.extend(output.rephrasings)
            for insight in output.insights:
                self.insights.append({"wellId": output.well_id, **insight.to_json()})
            if output.prompts:
                self.prompts[output.well_id] = output.prompts
            self.per_well_status[output.well_id] = "done"

    def fail(self, well_id: str, reason: str) -> None:
        with self._lock:
            self.per_well_status[well_id] = f"failed: {reason}"

    def to_json(self, cursor: int = 0) -> dict:
        with self._lock:
            ordered = sort_and_dedupe(self.pool)
            return {
                "jobId": self.job_id,
                "inletId": self.inlet_id,
                "generation": self.generation,
                "wells": dict(sorted(self.per_well_status.items())),
                "rephrasings": [r.to_json() for r in ordered[cursor:]],
                "cursor": len(ordered),
                "insights": list(self.insights),
                "done": self.done,
            }


class Orchestrator:
    def __init__(
        self,
        backends: Backends,
        phonology: Optional[Phonology] = None,
        tagger: Optional[Tagger] = None,
        max_workers: int = 6,
    ):
        self.backends = backends
        self.phonology = phonology or Phonology()
        self.tagger = tagger or default_tagger()
        self.scorer = ConstraintScorer(phonology=self.phonology, tagger=self.tagger)
        self._executor = ThreadPoolExecutor(max_workers=max_workers)
        self._last_job: dict[str, RunJob] = {}
        # Sequential job ids keep responses reproducible across process runs.
        self._job_counter = itertools.count(1)

    # --- running -------------------------------------------------------------

    def active_constraints(
        self, configs: Sequence[WellConfig], ctx: InletContext,
        active_ids: set[str],
    ) -> list[Constraint]:
        constraints: list[Constraint] = []
        for cfg in configs:
            if cfg.well_id in active_ids or cfg.kind == "words":
                constraints.extend(get_well(cfg.kind).constraints_for(cfg, ctx))
        return constraints

    def run_wells(
        self,
        doc: Document,
        inlet_id: str,
        configs: Sequence[WellConfig],
        well_ids: Optional[Sequence[str]] = None,
        wait: bool = False,
        extra_constraints: Optional[Sequence[Constraint]] = None,
    ) -> RunJob:
        """Launch a run. well_ids=None runs every active well (fresh
        generation); a subset re-runs those wells into the same generation's
        pool, replacing only their own earlier contributions."""
        inlet = doc.inlet(inlet_id)
        by_id = {cfg.well_id: cfg for cfg in configs}
        active_ids = set(inlet.active_well_ids) | {
            cfg.well_id for cfg in configs if cfg.kind == "words"
        }
        active_ids &= set(by_id)
        if well_ids is None:
            target_ids = sorted(active_ids)
        else:
            unknown = [w for w in well_ids if w not in active_ids]
            if unknown:
                raise ValidationError(f"wells not active on this inlet: {unknown}")
            target_ids = sorted(set(well_ids))
        if not target_ids:
            raise NoActiveWellsError(f"inlet {inlet_id!r} has no active wells")

        partial = well_ids is not None
        previous = self._last_job.get(inlet_id)
        if not partial or previous is None or previous.generation != inlet.generation:
            bump_generation(doc, inlet_id)
            seed_pool: list[Rephrasing] = []
        else:
            # Single-well trigger: reuse the current generation's pool,
            # dropping the re-run wells' earlier contributions.
            seed_pool = [r for r in previous.pool if r.well_id not in target_ids]

        ctx = InletContext.of(doc.snapshot(), inlet_id)
        constraints = self.active_constraints(configs, ctx, active_ids)
        constraints.extend(extra_constraints or [])
        job = RunJob(
            job_id=f"job-{next(self._job_counter)}",
            inlet_id=inlet_id,
            generation=ctx.generation,
            per_well_status={w: "pending" for w in target_ids},
            pool=seed_pool,
        )
        self._last_job[inlet_id] = job
        view_kinds = self._view_kinds(configs, active_ids)

        def task(cfg: WellConfig) -> None:
            try:
                advice = advice_bundle(
                    [c for c in constraints], cfg.kind
                )
                output = get_well(cfg.kind).run(cfg, ctx, advice, self.backends)
                self.annotate_and_score(
                    output.rephrasings, constraints, view_kinds, ctx.before
                )
                job.merge(output)
            except PhraseletteError as exc:
                job.fail(cfg.well_id, f"{exc.code}: {exc}")
            except Exception as exc:  # defensive: a well bug stays its own failure
                job.fail(cfg.well_id, f"Error: {exc}")

        futures = [self._executor.submit(task, by_id[w]) for w in target_ids]
        if wait:
            for future in futures:
                future.result()
        return job

    def _view_kinds(self, configs: Sequence[WellConfig], active_ids: set[str]) -> set[str]:
        kinds = set()
        for cfg in configs:
            if cfg.well_id in active_ids or cfg.kind == "words":
                descriptor = get_well(cfg.kind)
                if descriptor.views:
                    if cfg.kind == "words":
                        kinds.add("pos")
                    elif cfg.kind == "context":
                        kinds.add("logProb")
                    elif cfg.kind == "sound":
                        kinds.add("phonemes")
        return kinds

    # --- annotation and scoring ------------------------------------------------

    def annotate_and_score(
        self,
        pool: Sequence[Rephrasing],
        constraints: Sequence[Constraint],
        view_kinds: set[str],
        before: str,
    ) -> None:
        for rephrasing in pool:
            if "pos" in view_kinds:
                self._annotate_pos(rephrasing)
            if "logProb" in view_kinds:
                self._annotate_log_prob(rephrasing, before)
            if "phonemes" in view_kinds:
                self._annotate_phonemes(rephrasing)
            self._score_with_retry(list(constraints), rephrasing, before)

    def _score_with_retry(
        self, constraints: list[Constraint], rephrasing: Rephrasing, before: str
    ) -> None:
        for attempt in range(2):
            try:
                self.scorer.score_all(constraints, rephrasing)
                return
            except MissingAnnotationError as exc:
                if attempt == 1:
                    break
                if exc.needs == "pos":
                    self._annotate_pos(rephrasing)
                elif exc.needs == "totalLogProb":
                    self._annotate_log_prob(rephrasing, before)
                    if rephrasing.total_log_prob is None:
                        break
        # Annotation is genuinely unavailable (e.g. logit backend down):
        # score the constraints that can be scored; the rest stay absent.
        scores = {}
        for constraint in constraints:
            try:
                scores[constraint.id] = self.scorer.score(constraint, rephrasing)
            except MissingAnnotationError:
                continue
        rephrasing.constraint_scores = scores
        rephrasing.recompute_overall()

    def _annotate_pos(self, rephrasing: Rephrasing) -> None:
        tagged = self.tagger.tag_phrase(rephrasing.text)
        tags = [tag for _, tag in tagged]
        words = [t for t in rephrasing.tokens if t.is_word]
        if len(words) == len(tags):
            for view, tag in zip(words, tags):
                view.pos = tag

    def _annotate_phonemes(self, rephrasing: Rephrasing) -> None:
        for view in rephrasing.tokens:
            if not view.is_word:
                continue
            try:
                view.phonemes = [
                    str(p) for p in self.phonology.pronounce(view.surface).phonemes
                ]
            except PhraseletteError:
                continue  # punctuation-only token: no pronunciation view

    def _annotate_log_prob(self, rephrasing: Rephrasing, before: str) -> None:
        if rephrasing.total_log_prob is not None:
            return
        backend: Optional[LogitBackend] = self.backends.logit
        if backend is None:
            return
        try:
            context = backend.tokenize(before)
            tokens = backend.tokenize(rephrasing.text)
            if not tokens:
                return
            total = 0.0
            prefix = list(context)
            step_values = []
            for token in tokens:
                result = backend.next_distribution(prefix)
                step = result.distribution.get(token, float("-inf"))
                step_values.append((token.surface, step))
                total += step
                prefix.append(token)
            rephrasing.total_log_prob = total
            if [s for s, _ in step_values] == [v.surface for v in rephrasing.tokens]:
                for view, (_, step) in zip(rephrasing.tokens, step_values):
                    view.log_prob = step
        except PhraseletteError:
            return  # annotation failures degrade to missing fields


def sort_and_dedupe(pool: Sequence[Rephrasing]) -> list[Rephrasing]:
    """Collapse duplicates by exact surface text (keeping the best-scoring
    entry, provenance merged), then order by overallScore desc, internalScore
    desc, text. Deterministic for any input order."""
    merged: dict[str, Rephrasing] = {}
    for rephrasing in sorted(
        pool, key=lambda r: (-r.overall_score, -r.internal_score, r.text, r.well_id)
    ):
        existing = merged.get(rephrasing.text)
        if existing is None:
            merged[rephrasing.text] = rephrasing
        else:
            for source in rephrasing.provenance:
                if source not in existing.provenance:
                    existing.provenance.append(source)
    return sorted(
        merged.values(),
        key=lambda r: (-r.overall_score, -r.internal_score, r.text),
    )
