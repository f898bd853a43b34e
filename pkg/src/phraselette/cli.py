"""Command line interface.

    phraselette run     -- headless constrained search, JSON or table out
    phraselette report  -- same run, rendered to CSV + figures in a directory
    phraselette serve   -- start the HTTP service (optionally mockit-backed)
    phraselette presets -- list built-in well descriptions

Runs against `--backend mock --seed N` are fully deterministic: byte-identical
output for identical invocations.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Optional

import click

from .config import AppConfig
from .constraints import Constraint
from .errors import BackendUnavailableError, PhraseletteError, ValidationError
from .lm import MockInstructBackend, MockLogitBackend
from .model import Document, WellConfig, create_inlet
from .orchestrator import Orchestrator, well_color
from .wells import Backends, all_presets, registered_kinds, validate_config

EXIT_VALIDATION = 2
EXIT_BACKEND = 3

PROMPTED = {"thesaurus", "reader", "dictionary"}


def _read_text(source: str) -> str:
    path = Path(source)
    if path.exists() and path.is_file():
        return path.read_text(encoding="utf-8")
    return source


def _parse_inlet(spec: str, doc_len: int) -> tuple[int, int]:
    try:
        start_s, end_s = spec.split(":", 1)
        start, end = int(start_s), int(end_s)
    except ValueError:
        raise ValidationError(f"--inlet must be START:END, got {spec!r}")
    return start, end


def _parse_well(spec: str, index: int) -> WellConfig:
    kind, _, description = spec.partition(":")
    kind = kind.strip()
    if kind not in registered_kinds():
        raise ValidationError(f"unknown well kind {kind!r} (have {registered_kinds()})")
    return WellConfig(
        kind=kind,
        well_id=f"{kind}-{index}",
        prompt_description=description or None if kind in PROMPTED else None,
    )


def _parse_range(raw: str, what: str) -> tuple[int, int]:
    try:
        lo, hi = raw.split("-", 1)
        return int(lo), int(hi)
    except ValueError:
        raise ValidationError(f"{what} must be MIN-MAX, got {raw!r}")


def _parse_constraint(spec: str) -> Constraint:
    parts = spec.split(":")
    kind = parts[0].strip().lower()
    if kind == "words":
        lo, hi = _parse_range(parts[1], "words")
        return Constraint(kind="wordCount", payload={"min": lo, "max": hi},
                          source_well_id="cli")
    if kind == "syllables":
        lo, hi = _parse_range(parts[1], "syllables")
        return Constraint(kind="syllableCount", payload={"min": lo, "max": hi},
                          source_well_id="cli")
    if kind == "pos":
        if len(parts) < 2:
            raise ValidationError("pos constraint needs tags, e.g. pos:\"VERB ADV\":exact")
        tags = parts[1].split()
        mode = parts[2] if len(parts) > 2 else "contains"
        return Constraint(kind="posSequence", payload={"tags": tags}, mode=mode,
                          source_well_id="cli")
    if kind == "sound":
        if len(parts) < 2:
            raise ValidationError("sound constraint needs phonemes, e.g. sound:\"K AE P\"")
        mode = parts[2] if len(parts) > 2 else "startsWith"
        return Constraint(kind="soundRef",
                          payload={"phonemes": parts[1].split(), "mode": mode},
                          source_well_id="cli")
    if kind == "band":
        if len(parts) != 3:
            raise ValidationError("band constraint is band:MIN:MAX, e.g. band:-20:-8")
        return Constraint(kind="logProbBand",
                          payload={"min": float(parts[1]), "max": float(parts[2])},
                          source_well_id="cli")
    raise ValidationError(f"unknown constraint kind {kind!r}")


def _apply_params(configs: list[WellConfig], params: tuple[str, ...]) -> None:
    by_kind = {cfg.kind: cfg for cfg in configs}
    for raw in params:
        try:
            target, assignment = raw.split(":", 1)
            key, value = assignment.split("=", 1)
        except ValueError:
            raise ValidationError(f"--param must be KIND:KEY=VALUE, got {raw!r}")
        cfg = by_kind.get(target)
        if cfg is None:
            raise ValidationError(f"--param targets inactive well kind {target!r}")
        cfg.parameters[key] = json.loads(value) if _json_like(value) else value


def _json_like(value: str) -> bool:
    try:
        json.loads(value)
        return True
    except json.JSONDecodeError:
        return False


def _build_backends(backend: str, fixture: Optional[str], seed: Optional[int],
                    config: AppConfig) -> Backends:
    if backend == "mock":
        if not fixture:
            raise ValidationError("--backend mock requires --fixture PATH")
        data = json.loads(Path(fixture).read_text(encoding="utf-8"))
        logit = MockLogitBackend(data["vocab"], data.get("transitions", {}))
        instruct = MockInstructBackend(
            canned=data.get("instruct", {}).get("canned", {})
        )
        return Backends(logit=logit, instruct=instruct, seed=seed)
    from .api import default_backends

    backends = default_backends(config)
    if backends.logit is None and backends.instruct is None:
        raise BackendUnavailableError(
            "no remote backends configured (set PHRASELETTE_LOGIT_URL / "
            "PHRASELETTE_INSTRUCT_URL or use --backend mock)"
        )
    backends.seed = seed
    return backends


def _execute_run(text, inlet, well, constraint, param, backend, fixture, seed, config):
    app_config = AppConfig.load(config) if config else AppConfig.load()
    document = Document(text=_read_text(text), id="doc-1")
    start, end = _parse_inlet(inlet, len(document.text))
    the_inlet = create_inlet(document, start, end, inlet_id="inlet-1")

    configs = [WellConfig(kind="words", well_id="words-0")]
    for i, spec in enumerate(well, start=1):
        cfg = _parse_well(spec, i)
        if cfg.kind != "words":
            configs.append(cfg)
    _apply_params(configs, param)
    for cfg in configs:
        validate_config(cfg)
    the_inlet.active_well_ids = {cfg.well_id for cfg in configs}

    constraints = [_parse_constraint(spec) for spec in constraint]
    backends = _build_backends(backend, fixture, seed, app_config)
    orchestrator = Orchestrator(backends)
    job = orchestrator.run_wells(
        document, "inlet-1", configs, wait=True, extra_constraints=constraints
    )
    job.job_id = "cli-run"  # deterministic output
    payload = job.to_json()
    payload["document"] = document.to_json()
    payload["wellColors"] = {cfg.well_id: well_color(cfg.well_id) for cfg in configs}
    return payload


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        click.echo(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False))
        return
    rows = [
        (r["text"], r["wellId"], f"{r['overallScore']:.3f}",
         "yes" if r["fullyMatched"] else "no")
        for r in payload["rephrasings"]
    ]
    width = max((len(r[0]) for r in rows), default=10)
    click.echo(f"{'REPHRASING':<{width}}  {'WELL':<14}  {'SCORE':<6}  MATCHED")
    for text, well_id, score, matched in rows:
        click.echo(f"{text:<{width}}  {well_id:<14}  {score:<6}  {matched}")
    for well_id, status in payload["wells"].items():
        if status != "done":
            click.echo(f"[{well_id}] {status}", err=True)


def _exit_code_for(payload: dict) -> int:
    statuses = payload["wells"].values()
    backend_down = any("BackendUnavailable" in s for s in statuses)
    if backend_down and not payload["rephrasings"]:
        return EXIT_BACKEND
    return 0


run_options = [
    click.option("--text", required=True, help="text file path, or the literal text"),
    click.option("--inlet", required=True, help="character range START:END"),
    click.option("--well", multiple=True,
                 help='well spec, e.g. thesaurus:"a romance novel\'s lexicon"'),
    click.option("--constraint", multiple=True,
                 help='constraint spec: words:1-4 | pos:"VERB ADV":exact | '
                      'sound:"K AE P":startsWith | syllables:1-3 | band:-20:-8'),
    click.option("--param", multiple=True, help="well parameter KIND:KEY=VALUE"),
    click.option("--backend", type=click.Choice(["mock", "remote"]), default="remote"),
    click.option("--fixture", type=click.Path(), help="mock fixture JSON"),
    click.option("--seed", type=int, default=None),
    click.option("--config", type=click.Path(), default=None),
]


def _with_options(options):
    def wrap(fn):
        for option in reversed(options):
            fn = option(fn)
        return fn
    return wrap


@click.group()
def main():
    """Constraint-driven phrase search for writers."""


@main.command("run")
@_with_options(run_options)
@click.option("--format", "fmt", type=click.Choice(["json", "table"]), default="json")
def run_command(text, inlet, well, constraint, param, backend, fixture, seed,
                config, fmt):
    """Run wells over one inlet and print the pooled rephrasings."""
    try:
        payload = _execute_run(text, inlet, well, constraint, param, backend,
                               fixture, seed, config)
    except ValidationError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_VALIDATION)
    except BackendUnavailableError as exc:
        click.echo(f"backend error: {exc}", err=True)
        sys.exit(EXIT_BACKEND)
    except PhraseletteError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    _emit(payload, fmt)
    sys.exit(_exit_code_for(payload))


@main.command("report")
@_with_options(run_options)
@click.option("--out-dir", required=True, type=click.Path(file_okay=False))
def report_command(text, inlet, well, constraint, param, backend, fixture, seed,
                   config, out_dir):
    """Run wells, then write rephrasings.csv and figures into --out-dir."""
    from .report import write_report

    try:
        payload = _execute_run(text, inlet, well, constraint, param, backend,
                               fixture, seed, config)
    except ValidationError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_VALIDATION)
    except BackendUnavailableError as exc:
        click.echo(f"backend error: {exc}", err=True)
        sys.exit(EXIT_BACKEND)
    written = write_report(payload, Path(out_dir))
    for path in written:
        click.echo(str(path))
    sys.exit(_exit_code_for(payload))


@main.command("serve")
@click.option("--host", default="127.0.0.1")
@click.option("--port", default=8787, type=int)
@click.option("--config", type=click.Path(), default=None)
@click.option("--fixture", type=click.Path(), default=None,
              help="serve with mock backends from this fixture")
@click.option("--seed", type=int, default=None)
@click.option("--ui-dir", type=click.Path(), default=None)
def serve_command(host, port, config, fixture, seed, ui_dir):
    """Start the HTTP service."""
    import uvicorn

    from .api import create_app, mock_backends

    app_config = AppConfig.load(config) if config else AppConfig.load()
    backends = None
    if fixture:
        data = json.loads(Path(fixture).read_text(encoding="utf-8"))
        backends = mock_backends(data, seed=seed)
    app = create_app(backends=backends, config=app_config, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port)


@main.command("presets")
@click.argument("kind", required=False)
def presets_command(kind):
    """List built-in well descriptions."""
    presets = all_presets()
    if kind:
        if kind not in presets:
            click.echo(f"error: no presets for {kind!r}", err=True)
            sys.exit(EXIT_VALIDATION)
        presets = {kind: presets[kind]}
    click.echo(json.dumps(presets, indent=2, ensure_ascii=False))


if __name__ == "__main__":
    main()
