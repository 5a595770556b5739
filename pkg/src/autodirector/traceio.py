"""Reading and writing the trace and trajectory file formats.

Both formats are line-delimited UTF-8 so files stream with bounded memory and
diffs stay local to a line.

Trace format: one JSON object per line.

* Line 1 is the header::

    {"type": "header",
     "map": {"width_px": 2048, "height_px": 2048,
             "start_locations": [{"owner": 0, "x": 128.0, "y": 128.0},
                                  {"owner": 1, "x": 1920.0, "y": 1920.0}]},
     "config": {"t_min": 50, "t_max": 150}}

  ``config`` is optional and holds partial DirectorConfig overrides.

* Every other line is a frame::

    {"type": "frame", "frame": 0,
     "units": [{"id": 10, "owner": 0, "x": 512.0, "y": 1536.0,
                "flags": ["transport"], "cargo": 2,
                "attacking": false, "under_attack": false}],
     "events": [{"kind": "unit_created", "unit_id": 10, "owner": 0,
                 "x": 512.0, "y": 1536.0}]}

  ``flags``, ``cargo``, ``attacking`` and ``under_attack`` may be omitted
  (empty / 0 / false); the writer always emits them.

Parsing is strict by default: unknown fields raise. With ``strict=False``
they are logged as warnings and ignored. Every failure raises
:class:`ParseError` carrying the 1-based line number and a machine-readable
code: ``encoding``, ``malformed-record``, ``missing-header``,
``duplicate-header``, ``missing-field``, ``invalid-value``,
``unknown-field``, ``non-increasing-frame``, ``out-of-bounds``, plus the
invariant codes raised by the model constructors (``duplicate-unit-id``,
``cargo-on-non-transport``, ``created-unit-missing``, ...).

Trajectory format: a fixed tab-separated header line, then one record per
frame::

    frame	left	top	width	height	focus_kind	focus_target

``focus_kind`` is ``-`` when the camera has no focus; ``focus_target`` is
``unit:<id>``, ``pos:<x>,<y>`` or ``-``.
"""
from __future__ import annotations

import io
import json
import logging
from dataclasses import dataclass

from .camera import ScreenRect
from .detection import EVENT_KINDS, PositionTarget, UnitTarget
from .director import TrajectorySample
from .errors import InvariantViolation, ParseError
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
)

log = logging.getLogger(__name__)

TRAJECTORY_HEADER = "frame\tleft\ttop\twidth\theight\tfocus_kind\tfocus_target"

_HEADER_KEYS = frozenset({"type", "map", "config"})
_MAP_KEYS = frozenset({"width_px", "height_px", "start_locations"})
_START_KEYS = frozenset({"owner", "x", "y"})
_FRAME_KEYS = frozenset({"type", "frame", "units", "events"})
_UNIT_KEYS = frozenset({"id", "owner", "x", "y", "flags", "cargo", "attacking", "under_attack"})
_EVENT_KEYS = frozenset({"kind", "unit_id", "owner", "x", "y"})


@dataclass(frozen=True)
class TraceDocument:
    """A parsed trace: map header, optional config overrides, frames."""

    map_info: MapInfo
    config_overrides: dict
    frames: tuple

    def resolved_config(self, base: DirectorConfig | None = None) -> DirectorConfig:
        """The document's embedded overrides applied on top of ``base``."""
        return apply_config_overrides(base if base is not None else default_config(), self.config_overrides)


# ---------------------------------------------------------------------------
# trace parsing

def _fail(line: int, code: str, message: str):
    raise ParseError(line, code, message)


def _check_unknown(obj: dict, allowed: frozenset, line: int, strict: bool, context: str):
    unknown = set(obj) - allowed
    if not unknown:
        return
    if strict:
        _fail(line, "unknown-field", f"unknown {context} field(s): {sorted(unknown)}")
    log.warning("line %d: ignoring unknown %s field(s): %s", line, context, sorted(unknown))


def _require(obj: dict, key: str, line: int, context: str):
    if key not in obj:
        _fail(line, "missing-field", f"{context} record is missing {key!r}")
    return obj[key]


def _as_int(value, key: str, line: int):
    if isinstance(value, bool) or not isinstance(value, int):
        _fail(line, "invalid-value", f"{key!r} must be an integer, got {value!r}")
    return value


def _as_number(value, key: str, line: int) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(line, "invalid-value", f"{key!r} must be a number, got {value!r}")
    return float(value)


def _as_bool(value, key: str, line: int) -> bool:
    if not isinstance(value, bool):
        _fail(line, "invalid-value", f"{key!r} must be a boolean, got {value!r}")
    return value


def _as_list(value, key: str, line: int) -> list:
    if not isinstance(value, list):
        _fail(line, "invalid-value", f"{key!r} must be a list, got {value!r}")
    return value


def _pos_from(obj: dict, line: int, context: str) -> MapPos:
    x = _as_number(_require(obj, "x", line, context), "x", line)
    y = _as_number(_require(obj, "y", line, context), "y", line)
    try:
        return MapPos(x, y)
    except InvariantViolation as e:
        _fail(line, e.code, str(e))


def _parse_header(obj: dict, line: int, strict: bool) -> tuple[MapInfo, dict]:
    _check_unknown(obj, _HEADER_KEYS, line, strict, "header")
    map_obj = _require(obj, "map", line, "header")
    if not isinstance(map_obj, dict):
        _fail(line, "invalid-value", "'map' must be an object")
    _check_unknown(map_obj, _MAP_KEYS, line, strict, "map")

    width = _as_int(_require(map_obj, "width_px", line, "map"), "width_px", line)
    height = _as_int(_require(map_obj, "height_px", line, "map"), "height_px", line)
    starts = []
    for raw in _as_list(_require(map_obj, "start_locations", line, "map"), "start_locations", line):
        if not isinstance(raw, dict):
            _fail(line, "invalid-value", "start location must be an object")
        _check_unknown(raw, _START_KEYS, line, strict, "start location")
        owner = raw.get("owner")
        if owner is not None:
            owner = _as_int(owner, "owner", line)
        pos = _pos_from(raw, line, "start location")
        try:
            starts.append(StartLocation(owner=owner, pos=pos))
        except InvariantViolation as e:
            _fail(line, e.code, str(e))

    try:
        map_info = MapInfo(width_px=width, height_px=height, start_locations=tuple(starts))
    except InvariantViolation as e:
        _fail(line, e.code, str(e))

    overrides = obj.get("config", {})
    if not isinstance(overrides, dict):
        _fail(line, "invalid-value", "'config' must be an object")
    try:
        apply_config_overrides(default_config(), overrides)  # keys and types only
    except InvariantViolation as e:
        _fail(line, e.code, str(e))
    return map_info, dict(overrides)


def _parse_unit(raw, line: int, strict: bool) -> UnitSnapshot:
    if not isinstance(raw, dict):
        _fail(line, "invalid-value", "unit must be an object")
    _check_unknown(raw, _UNIT_KEYS, line, strict, "unit")
    flags = []
    for flag in _as_list(raw.get("flags", []), "flags", line):
        if not isinstance(flag, str):
            _fail(line, "invalid-value", f"unit flag must be a string, got {flag!r}")
        flags.append(flag)
    try:
        return UnitSnapshot(
            unit_id=_as_int(_require(raw, "id", line, "unit"), "id", line),
            owner=_as_int(_require(raw, "owner", line, "unit"), "owner", line),
            pos=_pos_from(raw, line, "unit"),
            flags=frozenset(flags),
            cargo_count=_as_int(raw.get("cargo", 0), "cargo", line),
            is_attacking=_as_bool(raw.get("attacking", False), "attacking", line),
            is_under_attack=_as_bool(raw.get("under_attack", False), "under_attack", line),
        )
    except InvariantViolation as e:
        _fail(line, e.code, str(e))


def _parse_event(raw, line: int, strict: bool) -> DiscreteEvent:
    if not isinstance(raw, dict):
        _fail(line, "invalid-value", "event must be an object")
    _check_unknown(raw, _EVENT_KEYS, line, strict, "event")
    kind = _require(raw, "kind", line, "event")
    if not isinstance(kind, str):
        _fail(line, "invalid-value", f"event kind must be a string, got {kind!r}")
    try:
        return DiscreteEvent(
            kind=kind,
            unit_id=_as_int(_require(raw, "unit_id", line, "event"), "unit_id", line),
            owner=_as_int(_require(raw, "owner", line, "event"), "owner", line),
            pos=_pos_from(raw, line, "event"),
        )
    except InvariantViolation as e:
        _fail(line, e.code, str(e))


def _parse_frame(obj: dict, line: int, strict: bool, map_info: MapInfo) -> TraceFrame:
    _check_unknown(obj, _FRAME_KEYS, line, strict, "frame")
    number = _as_int(_require(obj, "frame", line, "frame"), "frame", line)
    units = tuple(_parse_unit(u, line, strict) for u in _as_list(obj.get("units", []), "units", line))
    events = tuple(_parse_event(e, line, strict) for e in _as_list(obj.get("events", []), "events", line))
    try:
        frame = TraceFrame(frame=number, units=units, events=events)
    except InvariantViolation as e:
        _fail(line, e.code, str(e))
    for u in frame.units:
        if not map_info.contains(u.pos):
            _fail(line, "out-of-bounds", f"unit {u.unit_id} at ({u.pos.x}, {u.pos.y}) is outside the map")
    for ev in frame.events:
        if not map_info.contains(ev.pos):
            _fail(line, "out-of-bounds", f"event for unit {ev.unit_id} at ({ev.pos.x}, {ev.pos.y}) is outside the map")
    return frame


def _iter_lines(source):
    """Yield (line_number, text) from str, bytes, a file object, or lines."""
    if isinstance(source, bytes):
        try:
            source = source.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(source[: e.start].count(b"\n") + 1, "encoding", "input is not valid UTF-8") from e
    if isinstance(source, str):
        lines = source.splitlines()
    elif isinstance(source, io.BufferedIOBase) or (hasattr(source, "mode") and "b" in getattr(source, "mode", "")):
        data = source.read()
        yield from _iter_lines(data)
        return
    else:
        lines = source
    for number, text in enumerate(lines, start=1):
        if isinstance(text, bytes):
            try:
                text = text.decode("utf-8")
            except UnicodeDecodeError as e:
                raise ParseError(number, "encoding", "input is not valid UTF-8") from e
        yield number, text.rstrip("\r\n")


def parse_trace(source, strict: bool = True) -> TraceDocument:
    """Parse and fully validate a trace; see the module docstring for the format."""
    map_info = None
    overrides: dict = {}
    frames = []
    last_frame = -1

    for line, text in _iter_lines(source):
        if not text.strip():
            continue
        try:
            obj = json.loads(text)
        except (ValueError, RecursionError) as e:
            raise ParseError(line, "malformed-record", f"not a JSON record: {e}") from e
        if not isinstance(obj, dict):
            _fail(line, "malformed-record", "record must be a JSON object")
        record_type = obj.get("type")
        if record_type == "header":
            if map_info is not None:
                _fail(line, "duplicate-header", "second header record")
            map_info, overrides = _parse_header(obj, line, strict)
        elif record_type == "frame":
            if map_info is None:
                _fail(line, "missing-header", "frame record before the header")
            frame = _parse_frame(obj, line, strict, map_info)
            if frame.frame <= last_frame:
                _fail(line, "non-increasing-frame", f"frame {frame.frame} after frame {last_frame}")
            last_frame = frame.frame
            frames.append(frame)
        else:
            _fail(line, "malformed-record", f"record type must be 'header' or 'frame', got {record_type!r}")

    if map_info is None:
        _fail(1, "missing-header", "trace has no header record")
    return TraceDocument(map_info=map_info, config_overrides=overrides, frames=tuple(frames))


# ---------------------------------------------------------------------------
# trace writing

def _dump(obj: dict) -> str:
    return json.dumps(obj, separators=(",", ":"), allow_nan=False)


def _unit_obj(u: UnitSnapshot) -> dict:
    return {
        "id": u.unit_id,
        "owner": u.owner,
        "x": u.pos.x,
        "y": u.pos.y,
        "flags": sorted(u.flags),
        "cargo": u.cargo_count,
        "attacking": u.is_attacking,
        "under_attack": u.is_under_attack,
    }


def _event_obj(e: DiscreteEvent) -> dict:
    return {"kind": e.kind, "unit_id": e.unit_id, "owner": e.owner, "x": e.pos.x, "y": e.pos.y}


def write_trace(doc: TraceDocument, sink) -> None:
    """Write ``doc`` in canonical form (all unit fields explicit, flags sorted)."""
    header: dict = {
        "type": "header",
        "map": {
            "width_px": doc.map_info.width_px,
            "height_px": doc.map_info.height_px,
            "start_locations": [
                {"owner": s.owner, "x": s.pos.x, "y": s.pos.y} for s in doc.map_info.start_locations
            ],
        },
    }
    if doc.config_overrides:
        header["config"] = doc.config_overrides
    sink.write(_dump(header) + "\n")
    for frame in doc.frames:
        sink.write(
            _dump(
                {
                    "type": "frame",
                    "frame": frame.frame,
                    "units": [_unit_obj(u) for u in frame.units],
                    "events": [_event_obj(e) for e in frame.events],
                }
            )
            + "\n"
        )


def dumps_trace(doc: TraceDocument) -> str:
    buf = io.StringIO()
    write_trace(doc, buf)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# trajectory format

def format_focus_target(target: UnitTarget | PositionTarget | None) -> str:
    if target is None:
        return "-"
    if isinstance(target, UnitTarget):
        return f"unit:{target.unit_id}"
    return f"pos:{target.pos.x!r},{target.pos.y!r}"


def _parse_focus_target(text: str, line: int) -> UnitTarget | PositionTarget | None:
    if text == "-":
        return None
    if text.startswith("unit:"):
        try:
            return UnitTarget(int(text[5:]))
        except ValueError:
            _fail(line, "invalid-value", f"bad unit target {text!r}")
    if text.startswith("pos:"):
        parts = text[4:].split(",")
        if len(parts) != 2:
            _fail(line, "invalid-value", f"bad position target {text!r}")
        try:
            return PositionTarget(MapPos(float(parts[0]), float(parts[1])))
        except (ValueError, InvariantViolation):
            _fail(line, "invalid-value", f"bad position target {text!r}")
    _fail(line, "invalid-value", f"bad focus target {text!r}")


def write_trajectory(samples, sink) -> None:
    """One tab-separated record per sample after a fixed header line."""
    sink.write(TRAJECTORY_HEADER + "\n")
    for s in samples:
        kind = s.focus_kind if s.focus_kind is not None else "-"
        sink.write(
            f"{s.frame}\t{s.rect.left}\t{s.rect.top}\t{s.rect.width}\t{s.rect.height}"
            f"\t{kind}\t{format_focus_target(s.focus_target)}\n"
        )


def dumps_trajectory(samples) -> str:
    buf = io.StringIO()
    write_trajectory(samples, buf)
    return buf.getvalue()


def parse_trajectory(source) -> list[TrajectorySample]:
    """Inverse of :func:`write_trajectory`."""
    samples = []
    saw_header = False
    for line, text in _iter_lines(source):
        if not text.strip():
            continue
        if not saw_header:
            if text != TRAJECTORY_HEADER:
                _fail(line, "bad-header", "first line must be the trajectory column header")
            saw_header = True
            continue
        fields = text.split("\t")
        if len(fields) != 7:
            _fail(line, "malformed-record", f"expected 7 tab-separated fields, got {len(fields)}")
        try:
            frame, left, top, width, height = (int(v) for v in fields[:5])
        except ValueError:
            _fail(line, "invalid-value", "frame and rect fields must be integers")
        kind = None if fields[5] == "-" else fields[5]
        if kind is not None and kind not in EVENT_KINDS:
            _fail(line, "invalid-value", f"unknown focus kind {fields[5]!r}")
        target = _parse_focus_target(fields[6], line)
        if (kind is None) != (target is None):
            _fail(line, "invalid-value", "focus_kind and focus_target must both be set or both be '-'")
        samples.append(
            TrajectorySample(
                frame=frame,
                rect=ScreenRect(left=left, top=top, width=width, height=height),
                focus_kind=kind,
                focus_target=target,
            )
        )
    if not saw_header:
        _fail(1, "bad-header", "trajectory input is empty")
    return samples
