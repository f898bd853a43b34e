import json
from pathlib import Path

import pytest

from phraselette.lm import MockInstructBackend, MockLogitBackend
from phraselette.model import Document, WellConfig, create_inlet
from phraselette.wells import Backends

FIXTURES = Path(__file__).parent / "fixtures"

# Tokens: 0=" " 1="glazed" 2="with" 3="vitrified" 4="per"
POEM_VOCAB = [" ", "glazed", "with", "vitrified", "per"]
POEM_TRANSITIONS = {
    "": {"1": 0.5, "3": 0.5},
    "1": {"0": 1.0},
    "3": {"0": 1.0},
    "1,0": {"2": 0.9, "4": 0.1},
    "3,0": {"4": 0.8, "2": 0.2},
}

CANNED = {
    "a precise scientific thesaurus": [
        "venusta amplitudo", "vitrified per", "crystalline efflorescence",
        "lustrous coating", "pellucid sheen",
    ],
    "skateboarder": [
        "Not digging the flowery language, just say what you mean.",
        "Feels kind of stiff, loosen it up.",
        "Why so fancy about water?",
    ],
    "Following those reactions": [
        "gnarly look", "killer vibe", "sick style", "fresh coat", "wet shine",
        "rad glaze",
    ],
    "an English to Greek dictionary": [
        "υαλοποιημένο με βροχή",
    ],
}


@pytest.fixture
def logit_backend():
    return MockLogitBackend(POEM_VOCAB, POEM_TRANSITIONS)


@pytest.fixture
def instruct_backend():
    return MockInstructBackend(canned=CANNED)


@pytest.fixture
def backends(logit_backend, instruct_backend):
    return Backends(logit=logit_backend, instruct=instruct_backend, seed=7)


@pytest.fixture
def poem_document():
    doc = Document(
        text="so much depends upon a red wheel barrow glazed with rain water",
        id="doc-test",
    )
    create_inlet(doc, 40, 51, inlet_id="inlet-test")  # covers "glazed with"
    return doc


@pytest.fixture
def well_configs():
    return [
        WellConfig(kind="words", well_id="w-words"),
        WellConfig(kind="thesaurus", well_id="w-thesaurus",
                   prompt_description="a precise scientific thesaurus, over the top, perhaps latin"),
        WellConfig(kind="reader", well_id="w-reader",
                   prompt_description="a skateboarder who is over it, just pick a word already"),
        WellConfig(kind="context", well_id="w-context",
                   parameters={"max_tokens": 3, "beam_width": 64}),
        WellConfig(kind="sound", well_id="w-sound"),
        WellConfig(kind="dictionary", well_id="w-dictionary",
                   prompt_description="an English to Greek dictionary"),
    ]


@pytest.fixture
def mock_fixture_file(tmp_path):
    path = tmp_path / "fixture.json"
    path.write_text(json.dumps({
        "vocab": POEM_VOCAB,
        "transitions": POEM_TRANSITIONS,
        "instruct": {"canned": CANNED},
    }))
    return path


def activate_all(doc: Document, configs) -> None:
    for inlet in doc.inlets:
        inlet.active_well_ids = {cfg.well_id for cfg in configs}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion at the end of the run."""
    lines = []
    for status in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(status, []):
            if getattr(report, "when", "call") != "call":
                continue
            if "test_acceptance" in report.nodeid:
                label = report.nodeid.split("::")[-1]
                verdict = "PASS" if report.passed else "FAIL"
                lines.append(f"{verdict}  {label}")
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(lines, key=lambda l: l.split()[-1]):
            terminalreporter.write_line(line)
