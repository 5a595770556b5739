"""Per-frame event detection.

Scans a :class:`TraceFrame` and produces watchable moments (candidates) with
fixed priorities:

====================  ========
kind                  priority
====================  ========
under_attack          3
attacking             3
scout_near_enemy      2
drop                  2
army_cluster          1
unit_created          1
scout_far             0
====================  ========

A worker counts as a scout only before the early-game cutoff frame and only
while outside its own main base. An "army unit" is anything that is not a
worker, structure, larva, overlord or spider mine; groups of workers mining,
clumped overlords and dense minefields must never read as an army.
"""
from __future__ import annotations

from dataclasses import dataclass

from .model import (
    LARVA,
    OVERLORD,
    SPIDER_MINE,
    STRUCTURE,
    TRANSPORT,
    UNIT_CREATED,
    WORKER,
    DirectorConfig,
    MapInfo,
    MapPos,
    TraceFrame,
    UnitSnapshot,
)

EVENT_PRIORITY = {
    "under_attack": 3,
    "attacking": 3,
    "scout_near_enemy": 2,
    "scout_far": 0,
    "drop": 2,
    "army_cluster": 1,
    "unit_created": 1,
}

EVENT_KINDS = frozenset(EVENT_PRIORITY)

ARMY_EXCLUDED_FLAGS = frozenset({WORKER, STRUCTURE, LARVA, OVERLORD, SPIDER_MINE})


@dataclass(frozen=True)
class UnitTarget:
    """Follow a live unit around the map."""

    unit_id: int


@dataclass(frozen=True)
class PositionTarget:
    """Watch a fixed map position."""

    pos: MapPos


@dataclass(frozen=True)
class EventCandidate:
    kind: str
    priority: int
    target: UnitTarget | PositionTarget
    frame: int

    def __post_init__(self):
        if self.kind not in EVENT_PRIORITY:
            raise ValueError(f"unknown event kind {self.kind!r}")
        if self.priority != EVENT_PRIORITY[self.kind]:
            raise ValueError(f"priority {self.priority} does not match kind {self.kind!r}")


def make_candidate(kind: str, target: UnitTarget | PositionTarget, frame: int) -> EventCandidate:
    return EventCandidate(kind, EVENT_PRIORITY[kind], target, frame)


@dataclass(frozen=True)
class ArmyCluster:
    centroid: MapPos
    member_count: int


def is_army_unit(unit: UnitSnapshot) -> bool:
    """True for any unit outside the exclusion list; lone transports count."""
    return not (unit.flags & ARMY_EXCLUDED_FLAGS)


def _own_base_distance(pos: MapPos, owner: int, map_info: MapInfo) -> float:
    """Distance to the nearest start location owned by ``owner`` (inf if none)."""
    own = [s.pos.distance_to(pos) for s in map_info.start_locations if s.owner == owner]
    return min(own) if own else float("inf")


def is_scouting_worker(unit: UnitSnapshot, frame: int, map_info: MapInfo, config: DirectorConfig) -> bool:
    """A worker away from its own main base, before the early-game cutoff."""
    if WORKER not in unit.flags:
        return False
    if frame >= config.scout_frame_cutoff:
        return False
    return _own_base_distance(unit.pos, unit.owner, map_info) > config.own_base_radius_px


def near_potential_enemy_base(pos: MapPos, owner: int, map_info: MapInfo, config: DirectorConfig) -> bool:
    """Within radius (inclusive) of any start location the owner does not hold.

    "Potential" is deliberate: every non-own start counts, whether or not an
    enemy was ever seen there.
    """
    return any(
        s.pos.distance_to(pos) <= config.near_base_radius_px
        for s in map_info.start_locations
        if s.owner != owner
    )


def detect_clusters(units, config: DirectorConfig) -> list[ArmyCluster]:
    """Groups of army units positioned closely together.

    Single-linkage: two army units belong to the same group when a chain of
    pairwise distances <= cluster_radius_px connects them. Groups smaller
    than cluster_min_units are dropped. Result is sorted by member count
    descending, ties by centroid x then y, so output order is deterministic.
    """
    army = [u for u in units if is_army_unit(u)]
    n = len(army)
    if n < config.cluster_min_units:
        return []

    # Union-find over the O(n^2) pair links; traces are small enough.
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    radius = config.cluster_radius_px
    for i in range(n):
        for j in range(i + 1, n):
            if army[i].pos.distance_to(army[j].pos) <= radius:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri

    groups: dict[int, list[UnitSnapshot]] = {}
    for i, u in enumerate(army):
        groups.setdefault(find(i), []).append(u)

    clusters = []
    for members in groups.values():
        if len(members) < config.cluster_min_units:
            continue
        # Average in ascending unit_id order so the centroid does not depend
        # on unit listing order (float addition is not associative).
        members = sorted(members, key=lambda u: u.unit_id)
        cx = sum(u.pos.x for u in members) / len(members)
        cy = sum(u.pos.y for u in members) / len(members)
        clusters.append(ArmyCluster(MapPos(cx, cy), len(members)))
    clusters.sort(key=lambda c: (-c.member_count, c.centroid.x, c.centroid.y))
    return clusters


def detect_events(frame: TraceFrame, map_info: MapInfo, config: DirectorConfig) -> list[EventCandidate]:
    """All candidates for one frame, in canonical order.

    Categories are emitted in a fixed sequence (units under attack, units
    attacking, drops, scouts, army clusters, unit creations), ascending
    unit id within each, so that downstream tie-breaking is deterministic.
    """
    now = frame.frame
    units = sorted(frame.units, key=lambda u: u.unit_id)
    out: list[EventCandidate] = []

    for u in units:
        if u.is_under_attack:
            out.append(make_candidate("under_attack", UnitTarget(u.unit_id), now))
    for u in units:
        if u.is_attacking:
            out.append(make_candidate("attacking", UnitTarget(u.unit_id), now))
    for u in units:
        if TRANSPORT in u.flags and u.cargo_count > 0 and near_potential_enemy_base(u.pos, u.owner, map_info, config):
            out.append(make_candidate("drop", UnitTarget(u.unit_id), now))
    for u in units:
        if is_scouting_worker(u, now, map_info, config):
            if near_potential_enemy_base(u.pos, u.owner, map_info, config):
                out.append(make_candidate("scout_near_enemy", UnitTarget(u.unit_id), now))
            else:
                out.append(make_candidate("scout_far", UnitTarget(u.unit_id), now))
    for cluster in detect_clusters(frame.units, config):
        out.append(make_candidate("army_cluster", PositionTarget(cluster.centroid), now))
    for ev in sorted(frame.events, key=lambda e: e.unit_id):
        if ev.kind == UNIT_CREATED:
            out.append(make_candidate("unit_created", UnitTarget(ev.unit_id), now))
    return out
