"""Command-line interface.

A thin shell over the library: each subcommand resolves its inputs, calls
the matching library function and writes the result. Human-facing summaries
go to stderr so file and stdout payloads stay byte-identical across
identical invocations.

Config precedence, lowest to highest: built-in defaults, overrides embedded
in the trace header, a JSON config file (``--config`` or the
``AUTODIRECTOR_CONFIG`` environment variable), then individual flags.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import traceio
from .director import run_detailed
from .errors import DirectorError, InvariantViolation
from .model import apply_config_overrides
from .render import render_run
from .simulator import DEFAULT_LENGTHS, SCENARIOS, generate_scenario

# (config field, flag value type, help text); viewport is handled as a pair.
_FIELD_FLAGS = (
    ("t_min", int, "min frames between focus changes for a higher-priority steal"),
    ("t_max", int, "frames after which any event may take focus"),
    ("move_factor", float, "fraction of remaining camera distance covered per frame"),
    ("scout_frame_cutoff", int, "frame from which scouting workers stop being reported"),
    ("near_base_radius_px", float, "radius around other players' starts arming scout/drop events"),
    ("own_base_radius_px", float, "radius around a player's own start suppressing scout events"),
    ("cluster_min_units", int, "minimum army units for a cluster candidate"),
    ("cluster_radius_px", float, "linkage distance for army clustering"),
)


def _viewport(text: str):
    width, sep, height = text.partition("x")
    if not sep or not width.isdigit() or not height.isdigit():
        raise argparse.ArgumentTypeError(f"expected WIDTHxHEIGHT, e.g. 640x480, got {text!r}")
    return int(width), int(height)


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("config overrides")
    for field, typ, help_text in _FIELD_FLAGS:
        group.add_argument("--" + field.replace("_", "-"), dest=field, type=typ, default=None, help=help_text)
    group.add_argument("--viewport", type=_viewport, default=None, metavar="WxH", help="viewport size, e.g. 640x480")


def _load_config_file(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fp:
        try:
            data = json.load(fp)
        except ValueError as exc:
            raise DirectorError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise DirectorError(f"{path}: config file must hold a JSON object")
    return data


def _resolve_config(doc, args):
    config = doc.resolved_config()
    path = args.config or os.environ.get("AUTODIRECTOR_CONFIG")
    if path:
        try:
            config = apply_config_overrides(config, _load_config_file(path))
        except InvariantViolation as exc:
            raise DirectorError(f"{path}: {exc}") from exc
    overrides = {}
    for field, _typ, _help in _FIELD_FLAGS:
        value = getattr(args, field)
        if value is not None:
            overrides[field] = value
    if args.viewport is not None:
        overrides["viewport_width_px"], overrides["viewport_height_px"] = args.viewport
    return apply_config_overrides(config, overrides)


def _write_text(path, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fp:
            fp.write(text)


def _cmd_run(args) -> int:
    with open(args.trace, "r", encoding="utf-8") as fp:
        doc = traceio.parse_trace(fp, strict=not args.lenient)
    config = _resolve_config(doc, args)
    result = run_detailed(doc.frames, doc.map_info, config)
    _write_text(args.out, traceio.dumps_trajectory(result.samples))

    err = sys.stderr
    print(f"frames processed: {result.frames_processed}", file=err)
    counts = " ".join(f"{kind}={n}" for kind, n in sorted(result.candidate_counts.items()))
    print(f"candidates: {counts or '(none)'}", file=err)
    print(f"focus changes: {len(result.focus_changes)}", file=err)
    for change in result.focus_changes:
        target = traceio.format_focus_target(change.target)
        print(f"  frame {change.frame}: {change.kind} -> {target} (priority {change.priority})", file=err)
    return 0


def _cmd_simulate(args) -> int:
    doc = generate_scenario(args.scenario, seed=args.seed, length=args.length)
    _write_text(args.out, traceio.dumps_trace(doc))
    print(f"scenario {args.scenario}: wrote {len(doc.frames)} frames", file=sys.stderr)
    return 0


def _cmd_render(args) -> int:
    with open(args.trace, "r", encoding="utf-8") as fp:
        doc = traceio.parse_trace(fp)
    with open(args.trajectory, "r", encoding="utf-8") as fp:
        samples = traceio.parse_trajectory(fp)
    _write_text(args.out, render_run(doc, samples, stride=args.stride))
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="autodirector", description="Automatic spectator camera for RTS game traces.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    run_p = sub.add_parser("run", help="compute a camera trajectory for a trace file")
    run_p.add_argument("--trace", required=True, help="input trace file (JSON lines)")
    run_p.add_argument("--out", default=None, help="trajectory output path (default: stdout)")
    run_p.add_argument("--config", default=None, help="JSON config file; $AUTODIRECTOR_CONFIG names a default")
    run_p.add_argument("--lenient", action="store_true", help="warn on unknown trace fields instead of failing")
    _add_config_flags(run_p)
    run_p.set_defaults(handler=_cmd_run)

    sim_p = sub.add_parser("simulate", help="generate a synthetic scenario trace")
    sim_p.add_argument("--scenario", required=True, help="one of: " + ", ".join(SCENARIOS))
    sim_p.add_argument("--seed", type=int, default=0, help="spawn-position jitter seed")
    sim_p.add_argument("--length", type=int, default=None,
                       help="frames to generate (defaults: "
                            + ", ".join(f"{k}={v}" for k, v in sorted(DEFAULT_LENGTHS.items())) + ")")
    sim_p.add_argument("--out", default=None, help="trace output path (default: stdout)")
    sim_p.set_defaults(handler=_cmd_simulate)

    render_p = sub.add_parser("render", help="draw a trace/trajectory pair as text grids")
    render_p.add_argument("--trace", required=True, help="trace file the trajectory was computed from")
    render_p.add_argument("--trajectory", required=True, help="trajectory file to visualize")
    render_p.add_argument("--out", default=None, help="output path (default: stdout)")
    render_p.add_argument("--stride", type=int, default=50, help="render every Nth frame (default 50)")
    render_p.set_defaults(handler=_cmd_render)

    serve_p = sub.add_parser("serve", help="start the HTTP service")
    serve_p.add_argument("--host", default="127.0.0.1")
    serve_p.add_argument("--port", type=int, default=8000)
    serve_p.set_defaults(handler=_cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (DirectorError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
