"""Phraselette: constraint-driven phrase search for writers.

Mark a span of a working text (an inlet), switch on a palette of phrasewells,
and pool their short rephrasings, scored against every active constraint.
"""

from .constraints import Advice, Constraint, ConstraintScorer, advice_for
from .model import (
    Document,
    Inlet,
    InletContext,
    Rephrasing,
    TokenView,
    WellConfig,
    accept_rephrasing,
    create_inlet,
    slice_context,
)
from .orchestrator import Orchestrator, RunJob, sort_and_dedupe, well_color
from .search import BeamParams, Histogram, Hypothesis, apply_band, beam_search, histogram_of
from .session import Session, load_session, save_session

__version__ = "0.1.0"

__all__ = [
    "Document",
    "Inlet",
    "InletContext",
    "Rephrasing",
    "TokenView",
    "WellConfig",
    "create_inlet",
    "accept_rephrasing",
    "slice_context",
    "Constraint",
    "Advice",
    "ConstraintScorer",
    "advice_for",
    "BeamParams",
    "Hypothesis",
    "Histogram",
    "beam_search",
    "histogram_of",
    "apply_band",
    "Orchestrator",
    "RunJob",
    "sort_and_dedupe",
    "well_color",
    "Session",
    "save_session",
    "load_session",
    "__version__",
]
