"""Shared builders for tests: compact constructors and randomized documents."""
from __future__ import annotations

import random

from autodirector import (
    DiscreteEvent,
    MapInfo,
    MapPos,
    StartLocation,
    TraceDocument,
    TraceFrame,
    UnitSnapshot,
)
from autodirector.model import UNIT_CREATED, UNIT_DESTROYED

DEFAULT_STARTS = ((0, (128.0, 128.0)), (1, (1920.0, 1920.0)))


def make_map(width: int = 2048, height: int = 2048, starts=DEFAULT_STARTS) -> MapInfo:
    return MapInfo(
        width_px=width,
        height_px=height,
        start_locations=tuple(StartLocation(owner=o, pos=MapPos(x, y)) for o, (x, y) in starts),
    )


def make_unit(uid, x, y, owner=0, flags=(), cargo=0, attacking=False, under_attack=False) -> UnitSnapshot:
    return UnitSnapshot(
        unit_id=uid,
        owner=owner,
        pos=MapPos(x, y),
        flags=frozenset(flags),
        cargo_count=cargo,
        is_attacking=attacking,
        is_under_attack=under_attack,
    )


def make_frame(frame, units=(), events=()) -> TraceFrame:
    return TraceFrame(frame=frame, units=tuple(units), events=tuple(events))


# Flag combinations that satisfy the model invariants (larva+transport is the
# one forbidden pair; cargo needs the transport flag).
_FLAG_CHOICES = (
    frozenset(),
    frozenset(),
    frozenset({"worker"}),
    frozenset({"structure"}),
    frozenset({"larva"}),
    frozenset({"overlord"}),
    frozenset({"spider_mine"}),
    frozenset({"transport"}),
    frozenset({"worker", "transport"}),
)


def random_document(rng: random.Random) -> TraceDocument:
    """A structurally valid document with randomized content, for round trips."""
    width = rng.randrange(700, 3000)
    height = rng.randrange(700, 3000)
    starts = []
    for owner in (0, 1, None, None)[: rng.randrange(2, 5)]:
        starts.append(
            StartLocation(owner=owner, pos=MapPos(rng.uniform(0, width), rng.uniform(0, height)))
        )
    map_info = MapInfo(width_px=width, height_px=height, start_locations=tuple(starts))

    overrides = {}
    if rng.random() < 0.5:
        overrides["t_min"] = rng.randrange(10, 80)
        overrides["t_max"] = rng.randrange(100, 400)
    if rng.random() < 0.3:
        overrides["move_factor"] = rng.uniform(0.05, 0.95)
    if rng.random() < 0.2:
        overrides["cluster_min_units"] = rng.randrange(2, 9)

    frames = []
    frame_no = rng.randrange(0, 3)
    for _ in range(rng.randrange(0, 9)):
        units = []
        for uid in rng.sample(range(1, 60), rng.randrange(0, 8)):
            flags = rng.choice(_FLAG_CHOICES)
            units.append(
                UnitSnapshot(
                    unit_id=uid,
                    owner=rng.randrange(2),
                    pos=MapPos(rng.uniform(0, width), rng.uniform(0, height)),
                    flags=flags,
                    cargo_count=rng.randrange(0, 5) if "transport" in flags else 0,
                    is_attacking=rng.random() < 0.2,
                    is_under_attack=rng.random() < 0.2,
                )
            )
        events = []
        if units and rng.random() < 0.4:
            born = rng.choice(units)
            events.append(DiscreteEvent(kind=UNIT_CREATED, unit_id=born.unit_id, owner=born.owner, pos=born.pos))
        if rng.random() < 0.2:
            events.append(
                DiscreteEvent(
                    kind=UNIT_DESTROYED,
                    unit_id=rng.randrange(1, 99),
                    owner=rng.randrange(2),
                    pos=MapPos(rng.uniform(0, width), rng.uniform(0, height)),
                )
            )
        frames.append(TraceFrame(frame=frame_no, units=tuple(units), events=tuple(events)))
        frame_no += rng.randrange(1, 40)

    return TraceDocument(map_info=map_info, config_overrides=overrides, frames=tuple(frames))
