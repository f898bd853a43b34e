"""Prompt templates live in a versioned data file, not code, so prompt-capture
tests pin exact content and deployments can swap wording without a release."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from ..errors import ValidationError

SUPPORTED_TEMPLATE_VERSION = 1


@lru_cache(maxsize=1)
def templates() -> dict:
    text = (resources.files("phraselette.wells") / "prompts" / "templates.json").read_text(
        encoding="utf-8"
    )
    data = json.loads(text)
    if data.get("version") != SUPPORTED_TEMPLATE_VERSION:
        raise ValidationError(
            f"unsupported prompt template version {data.get('version')!r}"
        )
    return data


def render(name: str, **fields) -> str:
    template = templates().get(name)
    if template is None:
        raise ValidationError(f"no prompt template named {name!r}")
    return template.format(**fields)


def clause_block(clauses: list[str]) -> str:
    if not clauses:
        return ""
    return "Constraints:\n" + "\n".join(f"- {clause}" for clause in clauses)
