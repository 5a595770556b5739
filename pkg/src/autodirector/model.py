"""Domain types for the auto-spectator engine.

Everything here is an immutable value; construction validates the structural
invariants and raises :class:`InvariantViolation` with a stable code when one
is broken. Behavioural rules (event detection, camera movement, focus
arbitration) live in their own modules.

Times are counted in logical game frames. Positions are map pixels, with the
map covering ``[0, width_px] x [0, height_px]``.
"""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

from .errors import ConfigError, InvariantViolation

# Unit classification flags. A unit with none of these is a generic combat unit.
WORKER = "worker"
STRUCTURE = "structure"
LARVA = "larva"
OVERLORD = "overlord"
SPIDER_MINE = "spider_mine"
TRANSPORT = "transport"

ALL_UNIT_FLAGS = frozenset({WORKER, STRUCTURE, LARVA, OVERLORD, SPIDER_MINE, TRANSPORT})

UNIT_CREATED = "unit_created"
UNIT_DESTROYED = "unit_destroyed"
DISCRETE_EVENT_KINDS = frozenset({UNIT_CREATED, UNIT_DESTROYED})

PLAYER_IDS = (0, 1)


@dataclass(frozen=True)
class MapPos:
    """A point on the map, in pixels. Fractional values are allowed."""

    x: float
    y: float

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InvariantViolation("nonfinite-position", f"position must be finite, got ({self.x}, {self.y})")

    def distance_to(self, other: MapPos) -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class UnitSnapshot:
    """One unit's state within a single frame."""

    unit_id: int
    owner: int
    pos: MapPos
    flags: frozenset = frozenset()
    cargo_count: int = 0
    is_attacking: bool = False
    is_under_attack: bool = False

    def __post_init__(self):
        if self.unit_id < 1:
            raise InvariantViolation("unit-id", f"unit_id must be positive, got {self.unit_id}")
        if self.owner not in PLAYER_IDS:
            raise InvariantViolation("bad-owner", f"owner must be one of {PLAYER_IDS}, got {self.owner}")
        unknown = self.flags - ALL_UNIT_FLAGS
        if unknown:
            raise InvariantViolation("unknown-flag", f"unknown unit flags: {sorted(unknown)}")
        if LARVA in self.flags and TRANSPORT in self.flags:
            raise InvariantViolation("larva-transport-conflict", f"unit {self.unit_id} cannot be both larva and transport")
        if self.cargo_count < 0:
            raise InvariantViolation("cargo-count", f"cargo_count must be >= 0, got {self.cargo_count}")
        if self.cargo_count > 0 and TRANSPORT not in self.flags:
            raise InvariantViolation(
                "cargo-on-non-transport",
                f"unit {self.unit_id} has cargo_count={self.cargo_count} but no transport flag",
            )


@dataclass(frozen=True)
class DiscreteEvent:
    """A point event the game engine reported for this frame."""

    kind: str
    unit_id: int
    owner: int
    pos: MapPos

    def __post_init__(self):
        if self.kind not in DISCRETE_EVENT_KINDS:
            raise InvariantViolation("bad-event-kind", f"unknown event kind {self.kind!r}")
        if self.unit_id < 1:
            raise InvariantViolation("unit-id", f"event unit_id must be positive, got {self.unit_id}")
        if self.owner not in PLAYER_IDS:
            raise InvariantViolation("bad-owner", f"event owner must be one of {PLAYER_IDS}, got {self.owner}")


@dataclass(frozen=True)
class TraceFrame:
    """Snapshot of all units plus the discrete events of one game frame."""

    frame: int
    units: tuple = ()
    events: tuple = ()

    def __post_init__(self):
        if self.frame < 0:
            raise InvariantViolation("frame-negative", f"frame must be >= 0, got {self.frame}")
        seen = set()
        for u in self.units:
            if u.unit_id in seen:
                raise InvariantViolation("duplicate-unit-id", f"unit_id {u.unit_id} appears twice in frame {self.frame}")
            seen.add(u.unit_id)
        for ev in self.events:
            if ev.kind == UNIT_CREATED and ev.unit_id not in seen:
                raise InvariantViolation(
                    "created-unit-missing",
                    f"unit_created event for unit {ev.unit_id} has no matching unit in frame {self.frame}",
                )

    def unit(self, unit_id: int) -> UnitSnapshot | None:
        for u in self.units:
            if u.unit_id == unit_id:
                return u
        return None


@dataclass(frozen=True)
class StartLocation:
    """A map start location; ``owner`` is ``None`` for an unowned one."""

    owner: int | None
    pos: MapPos

    def __post_init__(self):
        if self.owner is not None and self.owner not in PLAYER_IDS:
            raise InvariantViolation("bad-owner", f"start owner must be one of {PLAYER_IDS} or None, got {self.owner}")


@dataclass(frozen=True)
class MapInfo:
    width_px: int
    height_px: int
    start_locations: tuple

    def __post_init__(self):
        if self.width_px < 1 or self.height_px < 1:
            raise InvariantViolation("map-dims", f"map dimensions must be positive, got {self.width_px}x{self.height_px}")
        if len(self.start_locations) < 2:
            raise InvariantViolation("too-few-starts", f"need at least 2 start locations, got {len(self.start_locations)}")
        for s in self.start_locations:
            if not self.contains(s.pos):
                raise InvariantViolation("start-out-of-bounds", f"start location ({s.pos.x}, {s.pos.y}) outside map bounds")

    def contains(self, pos: MapPos) -> bool:
        return 0 <= pos.x <= self.width_px and 0 <= pos.y <= self.height_px

    def center(self) -> MapPos:
        return MapPos(self.width_px / 2, self.height_px / 2)


@dataclass(frozen=True)
class DirectorConfig:
    """All engine tunables.

    ``t_min``: frames since the last focus switch before a strictly
    higher-priority event may take over. ``t_max``: frames after which any
    event may take over regardless of priority. ``move_factor``: fraction of
    the camera-to-focus distance covered each frame.

    Construction does not validate; call :func:`validate_config`.
    """

    t_min: int = 50
    t_max: int = 150
    move_factor: float = 0.1
    scout_frame_cutoff: int = 7500
    near_base_radius_px: float = 320.0
    own_base_radius_px: float = 320.0
    cluster_min_units: int = 6
    cluster_radius_px: float = 128.0
    viewport_width_px: int = 640
    viewport_height_px: int = 480


# Field name -> expected scalar type, for config files / overrides / flags.
CONFIG_FIELDS = {
    "t_min": int,
    "t_max": int,
    "move_factor": float,
    "scout_frame_cutoff": int,
    "near_base_radius_px": float,
    "own_base_radius_px": float,
    "cluster_min_units": int,
    "cluster_radius_px": float,
    "viewport_width_px": int,
    "viewport_height_px": int,
}


def default_config() -> DirectorConfig:
    return DirectorConfig()


def apply_config_overrides(base: DirectorConfig, overrides) -> DirectorConfig:
    """Return ``base`` with the given field overrides applied.

    Raises :class:`InvariantViolation` for unknown fields or wrong value
    types; range checking stays with :func:`validate_config`.
    """
    checked = {}
    for name, value in overrides.items():
        expected = CONFIG_FIELDS.get(name)
        if expected is None:
            raise InvariantViolation("unknown-config-field", f"unknown config field {name!r}")
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise InvariantViolation("config-value-type", f"config field {name!r} must be a number, got {value!r}")
        if expected is int and not isinstance(value, int):
            raise InvariantViolation("config-value-type", f"config field {name!r} must be an integer, got {value!r}")
        checked[name] = expected(value)
    return dataclasses.replace(base, **checked)


def validate_config(config: DirectorConfig, map_info: MapInfo) -> None:
    """Raise :class:`ConfigError` naming the first field that breaks an invariant."""
    if config.t_min < 1:
        raise ConfigError("t_min", f"t_min must be > 0, got {config.t_min}")
    if config.t_min >= config.t_max:
        raise ConfigError("t_min", f"t_min must be < t_max, got t_min={config.t_min} t_max={config.t_max}")
    if not (0.0 <= config.move_factor <= 1.0):
        raise ConfigError("move_factor", f"move_factor out of [0,1], got {config.move_factor}")
    if config.scout_frame_cutoff < 0:
        raise ConfigError("scout_frame_cutoff", f"scout_frame_cutoff must be >= 0, got {config.scout_frame_cutoff}")
    if config.near_base_radius_px <= 0:
        raise ConfigError("near_base_radius_px", f"near_base_radius_px must be > 0, got {config.near_base_radius_px}")
    if config.own_base_radius_px <= 0:
        raise ConfigError("own_base_radius_px", f"own_base_radius_px must be > 0, got {config.own_base_radius_px}")
    if config.cluster_min_units < 1:
        raise ConfigError("cluster_min_units", f"cluster_min_units must be >= 1, got {config.cluster_min_units}")
    if config.cluster_radius_px <= 0:
        raise ConfigError("cluster_radius_px", f"cluster_radius_px must be > 0, got {config.cluster_radius_px}")
    if config.viewport_width_px < 1 or config.viewport_height_px < 1:
        raise ConfigError(
            "viewport_width_px",
            f"viewport must be at least 1x1, got {config.viewport_width_px}x{config.viewport_height_px}",
        )
    if config.viewport_width_px > map_info.width_px:
        raise ConfigError(
            "viewport_width_px",
            f"viewport width {config.viewport_width_px} exceeds map width {map_info.width_px}",
        )
    if config.viewport_height_px > map_info.height_px:
        raise ConfigError(
            "viewport_height_px",
            f"viewport height {config.viewport_height_px} exceeds map height {map_info.height_px}",
        )
