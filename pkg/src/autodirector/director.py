"""The per-frame orchestration loop.

For every trace frame, in order: detect candidates, arbitrate the focus,
resolve the focus to a map position, move the camera one smoothing step, emit
one trajectory sample. The whole run is a pure function of its inputs, so
identical traces always produce identical trajectories.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace

from .arbiter import FocusState, arbitrate
from .camera import ScreenRect, clamp_center, initial_camera, resolve_focus_position, screen_rect, step_camera
from .detection import PositionTarget, UnitTarget, detect_events
from .model import DirectorConfig, MapInfo, MapPos, validate_config


@dataclass(frozen=True)
class TrajectorySample:
    """Camera output for one frame: where the screen is, and why."""

    frame: int
    rect: ScreenRect
    focus_kind: str | None
    focus_target: UnitTarget | PositionTarget | None


@dataclass(frozen=True)
class FocusChange:
    frame: int
    kind: str
    target: UnitTarget | PositionTarget
    priority: int


@dataclass(frozen=True)
class RunResult:
    samples: tuple
    focus_changes: tuple
    candidate_counts: dict

    @property
    def frames_processed(self) -> int:
        return len(self.samples)


def run_detailed(frames, map_info: MapInfo, config: DirectorConfig) -> RunResult:
    """Run the director and keep the bookkeeping tests and summaries need.

    Beyond the samples, records every focus adoption (a followed unit dying
    and degrading into a position focus is not an adoption) and how many
    candidates each event kind produced.
    """
    validate_config(config, map_info)

    center = initial_camera(map_info, config).center
    focus: FocusState | None = None
    last_known: MapPos | None = None
    samples = []
    changes = []
    counts: Counter = Counter()
    prev_frame = -1

    for frame in frames:
        if frame.frame <= prev_frame:
            raise ValueError(f"trace frames must be strictly increasing, got {frame.frame} after {prev_frame}")
        prev_frame = frame.frame

        candidates = detect_events(frame, map_info, config)
        counts.update(c.kind for c in candidates)

        new_focus = arbitrate(focus, candidates, frame.frame, config)
        if new_focus is not focus:
            focus = new_focus
            last_known = None
            changes.append(FocusChange(frame.frame, focus.kind, focus.target, focus.priority))

        if focus is None:
            focus_pos = center
        else:
            focus_pos = resolve_focus_position(focus, frame, last_known)
            if isinstance(focus.target, UnitTarget):
                if frame.unit(focus.target.unit_id) is not None:
                    last_known = focus_pos
                else:
                    # Followed unit is gone: keep watching where it last was,
                    # without touching priority or the adoption timer.
                    focus = replace(focus, target=PositionTarget(focus_pos))

        center = clamp_center(step_camera(center, focus_pos, config.move_factor), map_info, config)
        samples.append(
            TrajectorySample(
                frame=frame.frame,
                rect=screen_rect(center, config),
                focus_kind=focus.kind if focus is not None else None,
                focus_target=focus.target if focus is not None else None,
            )
        )

    return RunResult(samples=tuple(samples), focus_changes=tuple(changes), candidate_counts=dict(counts))


def run_director(frames, map_info: MapInfo, config: DirectorConfig):
    """Trace in, camera trajectory out; one sample per input frame."""
    return list(run_detailed(frames, map_info, config).samples)
