"""Focus arbitration: decide each frame whether the camera switches target.

Two timers gate every switch, both measured in frames since the last focus
change (``delta``):

* a strictly higher-priority candidate may take over once ``delta >= t_min``;
* any candidate may take over once ``delta >= t_max``, so a stale focus never
  outlives a steady supply of new events.

Equal priority does not count as higher: two simultaneous battles of the same
importance cannot ping-pong the camera every ``t_min`` frames; one of them has
to wait for the ``t_max`` gate.

Candidates that are not adopted are simply discarded. Detection re-emits a
candidate every frame its condition still holds, so persistent events retry on
their own; one-shot events get exactly one chance.
"""
from __future__ import annotations

from dataclasses import dataclass

from .detection import EVENT_PRIORITY, EventCandidate, PositionTarget, UnitTarget
from .errors import InvariantViolation
from .model import DirectorConfig


@dataclass(frozen=True)
class FocusState:
    """What the camera is watching, and since when."""

    target: UnitTarget | PositionTarget
    priority: int
    adopted_at: int
    kind: str

    def __post_init__(self):
        if self.priority != EVENT_PRIORITY.get(self.kind):
            raise InvariantViolation(
                "priority-mismatch", f"priority {self.priority} does not match kind {self.kind!r}"
            )


def arbitrate(
    current: FocusState | None,
    candidates: list[EventCandidate],
    now: int,
    config: DirectorConfig,
) -> FocusState | None:
    """Pick the focus for this frame.

    Returns the ``current`` object itself (identity-preserved) when nothing is
    adopted, so callers can detect a switch with ``result is not current``.

    A candidate matching the current focus in both kind and target can never
    be adopted: re-adopting it every frame would reset the timers forever, and
    after ``t_max`` the whole point is to show something new. It does not
    block other candidates either.

    Raises ValueError if any candidate is stamped with a different frame than
    ``now``; that only happens on a corrupted trace or a caller bug.
    """
    for c in candidates:
        if c.frame != now:
            raise ValueError(f"candidate frame {c.frame} does not match current frame {now}")

    if current is None:
        # No focus yet: treat the elapsed time as infinite, everything is eligible.
        eligible = list(candidates)
    else:
        delta = now - current.adopted_at
        past_min = delta >= config.t_min
        past_max = delta >= config.t_max
        pool = [c for c in candidates if c.kind != current.kind or c.target != current.target]
        eligible = [c for c in pool if past_max or (past_min and c.priority > current.priority)]
    if not eligible:
        return current

    # max() keeps the first maximal element, preserving canonical order on ties.
    best = max(eligible, key=lambda c: c.priority)
    return FocusState(target=best.target, priority=best.priority, adopted_at=now, kind=best.kind)
