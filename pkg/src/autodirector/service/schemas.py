"""Request and response bodies for the HTTP service.

Trace and trajectory payloads travel as text in the same formats the CLI
reads and writes, so files and HTTP bodies are interchangeable.
"""
from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field


class ConfigOverrides(BaseModel):
    """Partial director config; unset fields keep their resolved values."""

    model_config = ConfigDict(extra="forbid")

    t_min: int | None = None
    t_max: int | None = None
    move_factor: float | None = None
    scout_frame_cutoff: int | None = None
    near_base_radius_px: float | None = None
    own_base_radius_px: float | None = None
    cluster_min_units: int | None = None
    cluster_radius_px: float | None = None
    viewport_width_px: int | None = None
    viewport_height_px: int | None = None


class RunRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    trace_text: str = Field(description="trace document, one JSON record per line")
    config: ConfigOverrides | None = None
    lenient: bool = False


class FocusChangeOut(BaseModel):
    frame: int
    kind: str
    target: str
    priority: int


class RunSummary(BaseModel):
    frames_processed: int
    focus_changes: list[FocusChangeOut]
    candidate_counts: dict[str, int]


class RunResponse(BaseModel):
    trajectory_text: str
    summary: RunSummary


class SimulateRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    scenario: str
    seed: int = 0
    length: int | None = Field(default=None, ge=1)


class SimulateResponse(BaseModel):
    trace_text: str
    frames: int


class RenderRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    trace_text: str
    trajectory_text: str
    stride: int = Field(default=50, ge=1)


class RenderResponse(BaseModel):
    text: str


class ScenarioInfo(BaseModel):
    name: str
    default_length: int
