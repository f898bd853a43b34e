"""Application configuration from a TOML or JSON file, with env overrides.

Keys:
    [backends]  logit_url, instruct_url, api_key
    [phonology] lexicon_path
    [pos]       model_path
    [wells]     presets_dir
    [service]   sessions_dir
"""

from __future__ import annotations

import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from .errors import ValidationError
from .lm.remote import ENV_API_KEY, ENV_INSTRUCT_URL, ENV_LOGIT_URL

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


@dataclass
class AppConfig:
    logit_url: Optional[str] = None
    instruct_url: Optional[str] = None
    api_key: Optional[str] = None
    lexicon_path: Optional[str] = None
    pos_model_path: Optional[str] = None
    presets_dir: Optional[str] = None
    sessions_dir: str = "sessions"
    raw: dict = field(default_factory=dict)

    @classmethod
    def load(cls, path: Optional[Union[str, Path]] = None,
             environ: Optional[dict] = None) -> "AppConfig":
        env = os.environ if environ is None else environ
        data: dict = {}
        if path is not None:
            path = Path(path)
            if not path.exists():
                raise ValidationError(f"config file {path} does not exist")
            if path.suffix == ".json":
                data = json.loads(path.read_text(encoding="utf-8"))
            else:
                data = tomllib.loads(path.read_text(encoding="utf-8"))
        backends = data.get("backends", {})
        return cls(
            logit_url=env.get(ENV_LOGIT_URL) or backends.get("logit_url"),
            instruct_url=env.get(ENV_INSTRUCT_URL) or backends.get("instruct_url"),
            api_key=env.get(ENV_API_KEY) or backends.get("api_key"),
            lexicon_path=data.get("phonology", {}).get("lexicon_path"),
            pos_model_path=data.get("pos", {}).get("model_path"),
            presets_dir=data.get("wells", {}).get("presets_dir"),
            sessions_dir=data.get("service", {}).get("sessions_dir", "sessions"),
            raw=data,
        )
