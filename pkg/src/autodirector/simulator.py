"""Deterministic synthetic trace generation.

Each scenario scripts a small situation exercising one slice of the event
catalogue (a battle, a scouting run, a drop, a minefield that must stay
boring, ...). Generation is a pure function of (scenario, seed, map, length):
the seed only perturbs spawn positions inside declared safe regions, while
event timing is scripted so the documented behaviour of each scenario is
exact. Scenario contracts assume the default detection config.

Scenarios are not a game simulation: units fly straight lines at constant
speed and combat flags are scripted, not resolved.
"""
from __future__ import annotations

import random

from .errors import ScenarioError
from .model import (
    OVERLORD,
    SPIDER_MINE,
    STRUCTURE,
    TRANSPORT,
    UNIT_CREATED,
    WORKER,
    DiscreteEvent,
    MapInfo,
    MapPos,
    StartLocation,
    TraceFrame,
    UnitSnapshot,
)
from .traceio import TraceDocument

DEFAULT_LENGTHS = {
    "example1": 301,
    "battle": 300,
    "scout_run": 9000,
    "drop_play": 600,
    "minefield": 200,
    "overlord_corner": 200,
    "two_battles": 800,
    "quiet": 120,
}

SCENARIOS = tuple(sorted(DEFAULT_LENGTHS))


def default_map() -> MapInfo:
    """2048x2048 map with two owned start locations in opposite corners."""
    return MapInfo(
        width_px=2048,
        height_px=2048,
        start_locations=(
            StartLocation(owner=0, pos=MapPos(128.0, 128.0)),
            StartLocation(owner=1, pos=MapPos(1920.0, 1920.0)),
        ),
    )


def _lerp(a: MapPos, b: MapPos, t: float) -> MapPos:
    return MapPos(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))


def _walk(start: MapPos, goal: MapPos, speed: float, frame: int) -> MapPos:
    """Straight-line constant-velocity position at ``frame``, stopping at the goal."""
    total = start.distance_to(goal)
    if total == 0:
        return start
    traveled = min(speed * frame, total)
    return _lerp(start, goal, traveled / total)


def _jitter(rng: random.Random, pos: MapPos, radius: float) -> MapPos:
    return MapPos(pos.x + rng.uniform(-radius, radius), pos.y + rng.uniform(-radius, radius))


def _geometry(map_info: MapInfo) -> tuple[MapPos, MapPos]:
    """Start positions of player 0 and player 1, validated for scenario use."""
    own = next((s.pos for s in map_info.start_locations if s.owner == 0), None)
    enemy = next((s.pos for s in map_info.start_locations if s.owner == 1), None)
    if own is None or enemy is None:
        raise ScenarioError("scenario maps need one start location owned by each player")
    if min(map_info.width_px, map_info.height_px) < 1024:
        raise ScenarioError("scenario maps must be at least 1024x1024")
    if own.distance_to(enemy) < 1280:
        raise ScenarioError("scenario start locations must be at least 1280 px apart")
    if own.distance_to(map_info.center()) < 700:
        raise ScenarioError("player 0 start location is too close to the map center for scenarios")
    return own, enemy


def _static_unit(unit_id, owner, pos, flags=frozenset(), attacking=False, under_attack=False, cargo=0):
    return UnitSnapshot(
        unit_id=unit_id,
        owner=owner,
        pos=pos,
        flags=frozenset(flags),
        cargo_count=cargo,
        is_attacking=attacking,
        is_under_attack=under_attack,
    )


def _example1(rng, map_info, length):
    """Five one-shot events on a fixed schedule: frames 0, 40, 60, 160, 220.

    With the embedded timer settings (t_min=50, t_max=150, the defaults) the
    director adopts exactly the events at frames 0, 160 and 220: the frame-40
    event arrives too early to steal focus, the frame-60 one is lower priority
    and too early for the any-event gate. Needs length >= 221 to play out.
    """
    own, enemy = _geometry(map_info)
    created_pos = MapPos(map_info.width_px * 0.25, map_info.height_px * 0.75)
    attacked_pos = MapPos(map_info.width_px * 0.75, map_info.height_px * 0.25)
    transport_pos = MapPos(enemy.x - 220.0, enemy.y)
    scout_teleport = _lerp(own, enemy, 0.5)
    walker_goal = map_info.center()

    frames = []
    for t in range(length):
        units = (
            # e1: flagless combat unit whose creation is the frame-0 event.
            _static_unit(10, 0, created_pos),
            # e2: transport parked near the enemy start; loaded only on frame 40.
            _static_unit(20, 0, transport_pos, flags={TRANSPORT}, cargo=1 if t == 40 else 0),
            # e3: worker that pops out of its base for exactly one frame.
            _static_unit(30, 0, scout_teleport if t == 60 else own, flags={WORKER}),
            # e4: worker walking out of its base; crosses the base radius at frame 160.
            UnitSnapshot(unit_id=40, owner=0, pos=_walk(own, walker_goal, 2.01, t), flags=frozenset({WORKER})),
            # e5: combat unit that takes a hit on frame 220 only.
            _static_unit(50, 1, attacked_pos, under_attack=(t == 220)),
        )
        events = (DiscreteEvent(kind=UNIT_CREATED, unit_id=10, owner=0, pos=created_pos),) if t == 0 else ()
        frames.append(TraceFrame(frame=t, units=units, events=events))
    return frames, {"t_min": 50, "t_max": 150}


def _battle(rng, map_info, length):
    """A sustained engagement of 8 army units, all flagged fighting, every frame."""
    own, enemy = _geometry(map_info)
    center = _lerp(own, enemy, 0.375)
    spots = [_jitter(rng, center, 40.0) for _ in range(8)]
    units = tuple(
        _static_unit(100 + i, i % 2, spot, attacking=True, under_attack=True)
        for i, spot in enumerate(spots)
    )
    return [TraceFrame(frame=t, units=units) for t in range(length)], {}


def _scout_run(rng, map_info, length):
    """A worker walking from its own start to the enemy start.

    At 0.284 px/frame on the default map it leaves its base radius around
    frame 1130 and is still mid-route when the scout cutoff (frame 7500)
    silences it; it only enters the enemy base radius well after that.
    """
    own, enemy = _geometry(map_info)
    start = _jitter(rng, own, 10.0)
    frames = [
        TraceFrame(frame=t, units=(UnitSnapshot(unit_id=200, owner=0, pos=_walk(start, enemy, 0.284, t), flags=frozenset({WORKER})),))
        for t in range(length)
    ]
    return frames, {}


def _drop_play(rng, map_info, length):
    """A loaded transport flying straight at the enemy start."""
    own, enemy = _geometry(map_info)
    start = _jitter(rng, own, 10.0)
    frames = [
        TraceFrame(
            frame=t,
            units=(
                UnitSnapshot(
                    unit_id=300,
                    owner=0,
                    pos=_walk(start, enemy, 4.3, t),
                    flags=frozenset({TRANSPORT}),
                    cargo_count=4,
                ),
            ),
        )
        for t in range(length)
    ]
    return frames, {}


def _minefield(rng, map_info, length):
    """A dense minefield plus workers mining at home; must stay eventless."""
    own, _enemy = _geometry(map_info)
    center = map_info.center()
    mines = []
    for i in range(30):
        row, col = divmod(i, 6)
        base = MapPos(center.x + (col - 2.5) * 24.0, center.y + (row - 2.0) * 24.0)
        mines.append(_static_unit(400 + i, 1, _jitter(rng, base, 5.0), flags={SPIDER_MINE}))
    workers = [_static_unit(450 + i, 0, _jitter(rng, own, 40.0), flags={WORKER}) for i in range(4)]
    units = tuple(mines + workers)
    return [TraceFrame(frame=t, units=units) for t in range(length)], {}


def _overlord_corner(rng, map_info, length):
    """Overlords clumped in a map corner; must never read as an army."""
    corner = MapPos(map_info.width_px - 100.0, 100.0)
    units = tuple(_static_unit(500 + i, 1, _jitter(rng, corner, 30.0), flags={OVERLORD}) for i in range(10))
    return [TraceFrame(frame=t, units=units) for t in range(length)], {}


def _two_battles(rng, map_info, length):
    """Two simultaneous engagements of equal priority at distant spots."""
    own, enemy = _geometry(map_info)
    centers = (_lerp(own, enemy, 0.2), _lerp(own, enemy, 0.8))
    units = []
    for b, center in enumerate(centers):
        for i in range(6):
            units.append(
                _static_unit(600 + 100 * b + i, i % 2, _jitter(rng, center, 40.0), attacking=True, under_attack=True)
            )
    units = tuple(units)
    return [TraceFrame(frame=t, units=units) for t in range(length)], {}


def _quiet(rng, map_info, length):
    """Units exist but nothing watchable ever happens."""
    own, enemy = _geometry(map_info)
    units = []
    for p, base in ((0, own), (1, enemy)):
        for i in range(4):
            units.append(_static_unit(800 + 100 * p + i, p, _jitter(rng, base, 50.0), flags={WORKER}))
        for i in range(2):
            units.append(_static_unit(850 + 100 * p + i, p, _jitter(rng, base, 80.0), flags={STRUCTURE}))
    units = tuple(units)
    return [TraceFrame(frame=t, units=units) for t in range(length)], {}


_BUILDERS = {
    "example1": _example1,
    "battle": _battle,
    "scout_run": _scout_run,
    "drop_play": _drop_play,
    "minefield": _minefield,
    "overlord_corner": _overlord_corner,
    "two_battles": _two_battles,
    "quiet": _quiet,
}


def generate_scenario(
    kind: str,
    seed: int = 0,
    map_info: MapInfo | None = None,
    length: int | None = None,
) -> TraceDocument:
    """Build the named scenario; identical arguments give identical documents."""
    builder = _BUILDERS.get(kind)
    if builder is None:
        raise ScenarioError(f"unknown scenario {kind!r}; valid scenarios: {', '.join(SCENARIOS)}")
    if map_info is None:
        map_info = default_map()
    if length is None:
        length = DEFAULT_LENGTHS[kind]
    if length < 1:
        raise ScenarioError(f"length must be >= 1, got {length}")

    rng = random.Random(seed)
    frames, overrides = builder(rng, map_info, length)
    return TraceDocument(map_info=map_info, config_overrides=overrides, frames=tuple(frames))
