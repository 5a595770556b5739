"""Camera kinematics: smooth movement, map clamping, viewport geometry.

The camera never teleports. Each frame it covers ``move_factor`` of the
remaining distance to the focus position, per coordinate, which gives an
exponential approach: after n frames the residual distance is
``(1 - move_factor)^n`` of the original. Smoothing always aims at the raw
focus position; only the emitted center is clamped so the viewport stays on
the map.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .arbiter import FocusState
from .detection import PositionTarget, UnitTarget
from .model import DirectorConfig, MapInfo, MapPos, TraceFrame


@dataclass(frozen=True)
class ScreenRect:
    """Top-left corner plus dimensions of the visible map region, integer pixels."""

    left: int
    top: int
    width: int
    height: int


@dataclass(frozen=True)
class CameraState:
    center: MapPos
    focus: FocusState | None = None
    last_known_target_pos: MapPos | None = None


def resolve_focus_position(focus: FocusState, frame: TraceFrame, fallback: MapPos | None) -> MapPos:
    """Map position the camera should move toward this frame.

    Position targets resolve to themselves. Unit targets resolve to the
    unit's position in ``frame``; if the unit is gone (died, unloaded, left
    the trace), the caller-provided ``fallback`` (its last known position)
    is used instead.
    """
    if isinstance(focus.target, PositionTarget):
        return focus.target.pos
    unit = frame.unit(focus.target.unit_id)
    if unit is not None:
        return unit.pos
    if fallback is None:
        raise ValueError(f"unit {focus.target.unit_id} absent from frame {frame.frame} and no last known position")
    return fallback


def step_camera(pos: MapPos, focus_pos: MapPos, move_factor: float) -> MapPos:
    """One smoothing step toward ``focus_pos``."""
    return MapPos(
        pos.x + move_factor * (focus_pos.x - pos.x),
        pos.y + move_factor * (focus_pos.y - pos.y),
    )


def clamp_center(center: MapPos, map_info: MapInfo, config: DirectorConfig) -> MapPos:
    """Clamp so the full viewport around ``center`` lies inside the map."""
    half_w = config.viewport_width_px / 2
    half_h = config.viewport_height_px / 2
    return MapPos(
        min(max(center.x, half_w), map_info.width_px - half_w),
        min(max(center.y, half_h), map_info.height_px - half_h),
    )


def screen_rect(center: MapPos, config: DirectorConfig) -> ScreenRect:
    """Integer top-left rect for an already-clamped center."""
    return ScreenRect(
        left=math.floor(center.x - config.viewport_width_px / 2),
        top=math.floor(center.y - config.viewport_height_px / 2),
        width=config.viewport_width_px,
        height=config.viewport_height_px,
    )


def initial_camera(map_info: MapInfo, config: DirectorConfig) -> CameraState:
    """Camera parked at the map center, clamped, with no focus."""
    return CameraState(center=clamp_center(map_info.center(), map_info, config))
