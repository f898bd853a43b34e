"""The HTTP service: the single boundary the UI (and anything else) consumes.

Endpoints mirror the engine operations one-to-one; no UI-private routes.
Mutations are serialized per document; run jobs execute in the orchestrator's
worker pool and are polled with an incremental cursor.
"""

from __future__ import annotations

import threading
from pathlib import Path
from typing import Optional, Union

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .config import AppConfig
from .errors import (
    NotFoundError,
    PhraseletteError,
    UnknownInletError,
    UnknownWellError,
)
from .lm import MockInstructBackend, MockLogitBackend, backends_from_env
from .model import Document, WellConfig, create_inlet, delete_inlet, accept_rephrasing
from .orchestrator import Orchestrator, RunJob, well_color
from .phonology import Lexicon, Phonology
from .postag import Tagger, default_tagger
from .session import Session, load_session, save_session
from .wells import Backends, all_presets, registered_kinds, validate_config

_STATUS = {
    "Validation": 400,
    "OutOfBounds": 400,
    "EmptyRange": 400,
    "OverlappingInlet": 400,
    "NoActiveWells": 400,
    "Unpronounceable": 400,
    "EmptyInput": 400,
    "SchemaVersionMismatch": 400,
    "UnknownInlet": 404,
    "UnknownWell": 404,
    "NotFound": 404,
    "IoError": 404,
    "StaleGeneration": 409,
    "BackendUnavailable": 503,
    "ContextTooLong": 503,
}


class CreateDocumentBody(BaseModel):
    text: str
    id: Optional[str] = None


class CreateInletBody(BaseModel):
    start: int
    end: int
    id: Optional[str] = None


class CreateWellBody(BaseModel):
    kind: str
    promptDescription: Optional[str] = None
    parameters: dict = Field(default_factory=dict)
    wellId: Optional[str] = None


class PatchWellBody(BaseModel):
    promptDescription: Optional[str] = None
    parameters: Optional[dict] = None


class RunBody(BaseModel):
    wellIds: Optional[Union[list[str], str]] = None


class AcceptBody(BaseModel):
    rephrasingId: str


class SaveSessionBody(BaseModel):
    documentId: str


class AppState:
    def __init__(self, backends: Backends, config: AppConfig):
        phonology = Phonology(
            Lexicon.load(config.lexicon_path) if config.lexicon_path else None
        )
        tagger = (
            Tagger.from_weights(config.pos_model_path)
            if config.pos_model_path
            else default_tagger()
        )
        self.config = config
        self.orchestrator = Orchestrator(backends, phonology=phonology, tagger=tagger)
        self.sessions: dict[str, Session] = {}  # by document id
        self.inlet_index: dict[str, str] = {}  # inlet id -> document id
        self.jobs: dict[str, RunJob] = {}
        self.snapshotted_jobs: set[str] = set()
        self.locks: dict[str, threading.Lock] = {}

    def lock(self, doc_id: str) -> threading.Lock:
        return self.locks.setdefault(doc_id, threading.Lock())

    def session_of(self, doc_id: str) -> Session:
        session = self.sessions.get(doc_id)
        if session is None:
            raise NotFoundError(f"no document {doc_id!r}")
        return session

    def document(self, doc_id: str) -> Document:
        return self.session_of(doc_id).document

    def document_by_inlet(self, inlet_id: str) -> Document:
        doc_id = self.inlet_index.get(inlet_id)
        if doc_id is None:
            raise UnknownInletError(f"no inlet {inlet_id!r}")
        return self.document(doc_id)

    def register(self, session: Session) -> None:
        self.sessions[session.document.id] = session
        for inlet in session.document.inlets:
            self.inlet_index[inlet.id] = session.document.id


def default_backends(config: AppConfig) -> Backends:
    logit, instruct = backends_from_env(
        {"PHRASELETTE_LOGIT_URL": config.logit_url or "",
         "PHRASELETTE_INSTRUCT_URL": config.instruct_url or "",
         "PHRASELETTE_API_KEY": config.api_key or ""}
    )
    return Backends(logit=logit, instruct=instruct)


def create_app(
    backends: Optional[Backends] = None,
    config: Optional[AppConfig] = None,
    ui_dir: Optional[str] = None,
) -> FastAPI:
    config = config or AppConfig.load()
    backends = backends or default_backends(config)
    state = AppState(backends, config)
    app = FastAPI(title="phraselette")
    app.state.engine = state

    @app.exception_handler(PhraseletteError)
    async def engine_error(request: Request, exc: PhraseletteError):
        return JSONResponse(
            status_code=_STATUS.get(exc.code, 500),
            content={"error": {"code": exc.code, "message": str(exc)}},
        )

    # --- documents -----------------------------------------------------------

    @app.post("/documents")
    def create_document(body: CreateDocumentBody):
        doc = Document(text=body.text, id=body.id) if body.id else Document(text=body.text)
        session = Session(document=doc)
        # The words well is always present and cannot be deactivated.
        session.well_configs.append(WellConfig(kind="words", well_id=f"words-{doc.id}"))
        session.log_event("createDocument", documentId=doc.id)
        state.register(session)
        return _document_json(state, doc)

    @app.get("/documents/{doc_id}")
    def get_document(doc_id: str):
        return _document_json(state, state.document(doc_id))

    @app.post("/documents/{doc_id}/inlets")
    def post_inlet(doc_id: str, body: CreateInletBody):
        session = state.session_of(doc_id)
        with state.lock(doc_id):
            inlet = create_inlet(session.document, body.start, body.end,
                                 inlet_id=body.id or "")
            inlet.active_well_ids = {cfg.well_id for cfg in session.well_configs}
            state.inlet_index[inlet.id] = doc_id
            session.log_event("createInlet", inletId=inlet.id,
                              start=inlet.start, end=inlet.end)
        return inlet.to_json()

    @app.delete("/inlets/{inlet_id}")
    def remove_inlet(inlet_id: str):
        doc = state.document_by_inlet(inlet_id)
        session = state.session_of(doc.id)
        with state.lock(doc.id):
            delete_inlet(doc, inlet_id)
            state.inlet_index.pop(inlet_id, None)
            session.log_event("deleteInlet", inletId=inlet_id)
        return {"deleted": inlet_id, "revision": doc.revision}

    # --- wells ----------------------------------------------------------------

    @app.get("/wells/presets")
    def get_presets():
        return all_presets(state.config.presets_dir)

    @app.get("/wells/kinds")
    def get_kinds():
        return {"kinds": registered_kinds()}

    @app.post("/documents/{doc_id}/wells")
    def add_well(doc_id: str, body: CreateWellBody):
        session = state.session_of(doc_id)
        cfg = WellConfig(
            kind=body.kind,
            well_id=body.wellId or "",
            prompt_description=body.promptDescription,
            parameters=body.parameters,
        )
        validate_config(cfg)
        with state.lock(doc_id):
            session.well_configs.append(cfg)
            for inlet in session.document.inlets:
                inlet.active_well_ids.add(cfg.well_id)
            session.document.revision += 1
            session.log_event("addWell", wellId=cfg.well_id, kind=cfg.kind)
        return {**cfg.to_json(), "color": well_color(cfg.well_id)}

    @app.patch("/wells/{well_id}")
    def patch_well(well_id: str, body: PatchWellBody):
        for session in state.sessions.values():
            for cfg in session.well_configs:
                if cfg.well_id == well_id:
                    if body.promptDescription is not None:
                        cfg.prompt_description = body.promptDescription
                    if body.parameters is not None:
                        cfg.parameters = body.parameters
                    validate_config(cfg)
                    with state.lock(session.document.id):
                        session.document.revision += 1
                        session.log_event("patchWell", wellId=well_id)
                    return cfg.to_json()
        raise UnknownWellError(f"no well {well_id!r}")

    # --- runs -------------------------------------------------------------------

    @app.post("/documents/{doc_id}/inlets/{inlet_id}/run")
    def run_wells(doc_id: str, inlet_id: str, body: RunBody):
        session = state.session_of(doc_id)
        well_ids = body.wellIds
        if well_ids in (None, "all", []):
            well_ids = None
        elif isinstance(well_ids, str):
            well_ids = [well_ids]
        with state.lock(doc_id):
            job = state.orchestrator.run_wells(
                session.document, inlet_id, session.well_configs, well_ids=well_ids
            )
            state.jobs[job.job_id] = job
            session.log_event("runWells", inletId=inlet_id, jobId=job.job_id,
                              wellIds=well_ids or "all")
        return job.to_json()

    @app.get("/jobs/{job_id}")
    def get_job(job_id: str, cursor: int = 0):
        job = state.jobs.get(job_id)
        if job is None:
            raise NotFoundError(f"no job {job_id!r}")
        payload = job.to_json(cursor=cursor)
        if payload["done"] and job.job_id not in state.snapshotted_jobs:
            state.snapshotted_jobs.add(job.job_id)
            doc_id = state.inlet_index.get(job.inlet_id)
            if doc_id:
                full = job.to_json()
                state.session_of(doc_id).snapshot_pool(
                    job.generation, full["rephrasings"]
                )
        return payload

    @app.post("/inlets/{inlet_id}/accept")
    def accept(inlet_id: str, body: AcceptBody):
        doc = state.document_by_inlet(inlet_id)
        session = state.session_of(doc.id)
        job = state.orchestrator._last_job.get(inlet_id)
        rephrasing = None
        if job is not None:
            for candidate in job.pool:
                if candidate.id == body.rephrasingId:
                    rephrasing = candidate
                    break
        if rephrasing is None:
            raise NotFoundError(f"no rephrasing {body.rephrasingId!r} for this inlet")
        with state.lock(doc.id):
            accept_rephrasing(doc, inlet_id, rephrasing)
            session.log_event("acceptRephrasing", inletId=inlet_id,
                              rephrasingId=body.rephrasingId, text=rephrasing.text)
        return _document_json(state, doc)

    # --- sessions ----------------------------------------------------------------

    @app.put("/sessions/{session_id}")
    def put_session(session_id: str, body: SaveSessionBody):
        session = state.session_of(body.documentId)
        path = _session_path(state, session_id)
        save_session(session, path)
        return {"savedAs": session_id, "path": str(path)}

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        path = _session_path(state, session_id)
        session = load_session(path)
        state.register(session)
        return session.to_json()

    # --- static UI -----------------------------------------------------------------

    bundle = Path(ui_dir) if ui_dir else Path("frontend") / "dist"
    if bundle.is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=str(bundle), html=True), name="ui")

    return app


def _session_path(state: AppState, session_id: str) -> Path:
    safe = "".join(ch for ch in session_id if ch.isalnum() or ch in "-_")
    return Path(state.config.sessions_dir) / f"{safe}.json"


def _document_json(state: AppState, doc: Document) -> dict:
    session = state.session_of(doc.id)
    return {
        **doc.to_json(),
        "wells": [
            {**cfg.to_json(), "color": well_color(cfg.well_id)}
            for cfg in session.well_configs
        ],
    }


def mock_backends(fixture: dict, seed: Optional[int] = None) -> Backends:
    """Backends from a mock fixture dict: {vocab, transitions, instruct?}."""
    logit = MockLogitBackend(fixture["vocab"], fixture.get("transitions", {}))
    instruct = MockInstructBackend(canned=fixture.get("instruct", {}).get("canned", {}))
    return Backends(logit=logit, instruct=instruct, seed=seed)
