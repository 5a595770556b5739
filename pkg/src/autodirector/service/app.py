"""HTTP facade over the director pipeline.

Every endpoint is a stateless wrapper around one library call. Domain
errors (parse failures, bad config, unknown scenarios) surface as 422
responses whose detail carries the error class plus any machine-readable
attributes (``code``, ``line``, ``field``).
"""
from __future__ import annotations

import dataclasses

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import traceio
from ..director import run_detailed
from ..errors import DirectorError
from ..model import apply_config_overrides, default_config
from ..render import render_run
from ..simulator import DEFAULT_LENGTHS, SCENARIOS, generate_scenario
from .schemas import (
    FocusChangeOut,
    RenderRequest,
    RenderResponse,
    RunRequest,
    RunResponse,
    RunSummary,
    ScenarioInfo,
    SimulateRequest,
    SimulateResponse,
)

app = FastAPI(
    title="autodirector",
    description="Automatic spectator camera for RTS game traces.",
    version="0.1.0",
)


@app.exception_handler(DirectorError)
async def _director_error(request: Request, exc: DirectorError) -> JSONResponse:
    detail = {"error": type(exc).__name__, "message": str(exc)}
    for attr in ("code", "line", "field"):
        value = getattr(exc, attr, None)
        if value is not None:
            detail[attr] = value
    return JSONResponse(status_code=422, content={"detail": detail})


@app.post("/run", response_model=RunResponse)
def run(req: RunRequest) -> RunResponse:
    doc = traceio.parse_trace(req.trace_text, strict=not req.lenient)
    config = doc.resolved_config()
    if req.config is not None:
        config = apply_config_overrides(config, req.config.model_dump(exclude_none=True))
    result = run_detailed(doc.frames, doc.map_info, config)
    summary = RunSummary(
        frames_processed=result.frames_processed,
        focus_changes=[
            FocusChangeOut(
                frame=c.frame,
                kind=c.kind,
                target=traceio.format_focus_target(c.target),
                priority=c.priority,
            )
            for c in result.focus_changes
        ],
        candidate_counts=dict(sorted(result.candidate_counts.items())),
    )
    return RunResponse(trajectory_text=traceio.dumps_trajectory(result.samples), summary=summary)


@app.post("/simulate", response_model=SimulateResponse)
def simulate(req: SimulateRequest) -> SimulateResponse:
    doc = generate_scenario(req.scenario, seed=req.seed, length=req.length)
    return SimulateResponse(trace_text=traceio.dumps_trace(doc), frames=len(doc.frames))


@app.post("/render", response_model=RenderResponse)
def render(req: RenderRequest) -> RenderResponse:
    doc = traceio.parse_trace(req.trace_text)
    samples = traceio.parse_trajectory(req.trajectory_text)
    return RenderResponse(text=render_run(doc, samples, stride=req.stride))


@app.get("/config/defaults")
def config_defaults() -> dict:
    return dataclasses.asdict(default_config())


@app.get("/scenarios", response_model=list[ScenarioInfo])
def scenarios() -> list[ScenarioInfo]:
    return [ScenarioInfo(name=name, default_length=DEFAULT_LENGTHS[name]) for name in SCENARIOS]


@app.get("/healthz")
def healthz() -> dict:
    return {"status": "ok"}
