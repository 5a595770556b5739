"""Automatic spectator camera for RTS game traces.

Feed a per-frame trace of unit positions and events in, get a deterministic
camera trajectory out: the package scores watchable moments, arbitrates
which one holds the camera, and glides a viewport toward it.
"""
from .arbiter import FocusState, arbitrate
from .camera import (
    CameraState,
    ScreenRect,
    clamp_center,
    initial_camera,
    resolve_focus_position,
    screen_rect,
    step_camera,
)
from .detection import (
    EVENT_KINDS,
    EVENT_PRIORITY,
    ArmyCluster,
    EventCandidate,
    PositionTarget,
    UnitTarget,
    detect_clusters,
    detect_events,
    is_army_unit,
    is_scouting_worker,
    near_potential_enemy_base,
)
from .director import FocusChange, RunResult, TrajectorySample, run_detailed, run_director
from .errors import (
    ConfigError,
    DirectorError,
    InvariantViolation,
    ParseError,
    RenderError,
    ScenarioError,
)
from .model import (
    DirectorConfig,
    DiscreteEvent,
    MapInfo,
    MapPos,
    StartLocation,
    TraceFrame,
    UnitSnapshot,
    apply_config_overrides,
    default_config,
    validate_config,
)
from .render import render_block, render_run
from .simulator import DEFAULT_LENGTHS, SCENARIOS, default_map, generate_scenario
from .traceio import (
    TraceDocument,
    dumps_trace,
    dumps_trajectory,
    parse_trace,
    parse_trajectory,
    write_trace,
    write_trajectory,
)

__version__ = "0.1.0"

__all__ = [
    "ArmyCluster",
    "CameraState",
    "ConfigError",
    "DEFAULT_LENGTHS",
    "DirectorConfig",
    "DirectorError",
    "DiscreteEvent",
    "EVENT_KINDS",
    "EVENT_PRIORITY",
    "EventCandidate",
    "FocusChange",
    "FocusState",
    "InvariantViolation",
    "MapInfo",
    "MapPos",
    "ParseError",
    "PositionTarget",
    "RenderError",
    "RunResult",
    "SCENARIOS",
    "ScenarioError",
    "ScreenRect",
    "StartLocation",
    "TraceDocument",
    "TraceFrame",
    "TrajectorySample",
    "UnitSnapshot",
    "UnitTarget",
    "apply_config_overrides",
    "arbitrate",
    "clamp_center",
    "default_config",
    "default_map",
    "detect_clusters",
    "detect_events",
    "dumps_trace",
    "dumps_trajectory",
    "generate_scenario",
    "initial_camera",
    "is_army_unit",
    "is_scouting_worker",
    "near_potential_enemy_base",
    "parse_trace",
    "parse_trajectory",
    "render_block",
    "render_run",
    "resolve_focus_position",
    "run_detailed",
    "run_director",
    "screen_rect",
    "step_camera",
    "validate_config",
    "write_trace",
    "write_trajectory",
]
