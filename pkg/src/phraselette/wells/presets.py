"""Built-in prompt-description presets, cycled by the well's die icon."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Optional

from ..errors import ValidationError

PRESET_KINDS = ("thesaurus", "reader", "dictionary")


@lru_cache(maxsize=None)
def _bundled(kind: str) -> tuple[str, ...]:
    text = (resources.files("phraselette.wells") / "presets" / f"{kind}.json").read_text(
        encoding="utf-8"
    )
    return tuple(json.loads(text))


def load_presets(kind: str, presets_dir: Optional[str] = None) -> list[str]:
    if kind not in PRESET_KINDS:
        raise ValidationError(f"no presets for well kind {kind!r}")
    if presets_dir:
        override = Path(presets_dir) / f"{kind}.json"
        if override.exists():
            return list(json.loads(override.read_text(encoding="utf-8")))
    return list(_bundled(kind))


def all_presets(presets_dir: Optional[str] = None) -> dict[str, list[str]]:
    return {kind: load_presets(kind, presets_dir) for kind in PRESET_KINDS}


def cycle_preset(kind: str, index: int, presets_dir: Optional[str] = None) -> str:
    """Preset at `index`, wrapping around the list."""
    presets = load_presets(kind, presets_dir)
    return presets[index % len(presets)]
