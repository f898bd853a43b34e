"""Session persistence: one JSON file per working session.

Schema (version 1):
    {schema_version: 1, document, well_configs, constraints, history,
     event_log}

Writes are atomic (temp file + rename). The event log is append-only and
monotone in time; history holds immutable pool snapshots per generation.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Union

from .constraints import Constraint
from .errors import SchemaVersionMismatchError, SessionIoError
from .model import Document, WellConfig

SCHEMA_VERSION = 1


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


@dataclass
class Session:
    document: Document
    well_configs: list[WellConfig] = field(default_factory=list)
    constraints: list[Constraint] = field(default_factory=list)
    history: list[dict] = field(default_factory=list)
    event_log: list[dict] = field(default_factory=list)

    def log_event(self, event: str, **data) -> dict:
        entry = {"ts": _now(), "event": event, **data}
        self.event_log.append(entry)
        return entry

    def snapshot_pool(self, generation: int, rephrasings: list[dict]) -> None:
        self.history.append({"generation": generation, "pool": rephrasings})

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "document": self.document.to_json(),
            "well_configs": [cfg.to_json() for cfg in self.well_configs],
            "constraints": [c.to_json() for c in self.constraints],
            "history": self.history,
            "event_log": self.event_log,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Session":
        version = data.get("schema_version")
        if version != SCHEMA_VERSION:
            raise SchemaVersionMismatchError(
                f"session schema_version {version!r}, expected {SCHEMA_VERSION}"
            )
        return cls(
            document=Document.from_json(data["document"]),
            well_configs=[WellConfig.from_json(w) for w in data.get("well_configs", [])],
            constraints=[Constraint.from_json(c) for c in data.get("constraints", [])],
            history=list(data.get("history", [])),
            event_log=list(data.get("event_log", [])),
        )


def save_session(session: Session, path: Union[str, Path]) -> None:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".session-", suffix=".json")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                json.dump(session.to_json(), handle, ensure_ascii=False, indent=2)
            os.replace(tmp, path)
        finally:
            if os.path.exists(tmp):
                os.unlink(tmp)
    except OSError as exc:
        raise SessionIoError(f"cannot write session to {path}: {exc}") from exc


def load_session(path: Union[str, Path]) -> Session:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise SessionIoError(f"cannot read session from {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SessionIoError(f"{path} is not valid JSON: {exc}") from exc
    return Session.from_json(data)
