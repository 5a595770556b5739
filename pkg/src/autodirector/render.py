"""Plain-text visualization of a run, for eyeball debugging.

Each rendered block is a coarse character grid of the map: ``.`` is empty
ground, a digit is the number of units in that cell (capped at 9), ``#`` is
the border of the camera viewport. Output is deterministic.
"""
from __future__ import annotations

import io
import math

from .errors import RenderError
from .traceio import TraceDocument, format_focus_target


def _grid_shape(map_w: int, map_h: int, cols: int) -> tuple[int, int, float, float]:
    cols = max(8, cols)
    cell_w = map_w / cols
    cell_h = cell_w * 2  # terminal characters are roughly twice as tall as wide
    rows = max(1, math.ceil(map_h / cell_h))
    return cols, rows, cell_w, cell_h


def _cell_of(x: float, y: float, cell_w: float, cell_h: float, cols: int, rows: int) -> tuple[int, int]:
    col = min(cols - 1, max(0, int(x / cell_w)))
    row = min(rows - 1, max(0, int(y / cell_h)))
    return col, row


def render_block(doc: TraceDocument, sample, frame, cols: int = 64) -> str:
    """One annotated grid for a single frame/sample pair."""
    map_info = doc.map_info
    cols, rows, cell_w, cell_h = _grid_shape(map_info.width_px, map_info.height_px, cols)
    grid = [["." for _ in range(cols)] for _ in range(rows)]

    counts: dict[tuple[int, int], int] = {}
    for u in frame.units:
        cell = _cell_of(u.pos.x, u.pos.y, cell_w, cell_h, cols, rows)
        counts[cell] = counts.get(cell, 0) + 1
    for (col, row), n in counts.items():
        grid[row][col] = str(min(n, 9))

    rect = sample.rect
    c0, r0 = _cell_of(rect.left, rect.top, cell_w, cell_h, cols, rows)
    c1, r1 = _cell_of(rect.left + rect.width - 1, rect.top + rect.height - 1, cell_w, cell_h, cols, rows)
    for col in range(c0, c1 + 1):
        grid[r0][col] = "#"
        grid[r1][col] = "#"
    for row in range(r0, r1 + 1):
        grid[row][c0] = "#"
        grid[row][c1] = "#"

    kind = sample.focus_kind if sample.focus_kind is not None else "-"
    head = (
        f"frame {sample.frame}  focus={kind} target={format_focus_target(sample.focus_target)}"
        f"  rect=({rect.left},{rect.top},{rect.width},{rect.height})"
    )
    return "\n".join([head] + ["".join(row) for row in grid])


def render_run(doc: TraceDocument, samples, stride: int = 50, cols: int = 64) -> str:
    """Blocks for every ``stride``-th frame plus the final one.

    The trace and the trajectory must cover exactly the same frames,
    otherwise they are not two views of one run.
    """
    if stride < 1:
        raise RenderError(f"stride must be >= 1, got {stride}")
    trace_frames = [f.frame for f in doc.frames]
    sample_frames = [s.frame for s in samples]
    if trace_frames != sample_frames:
        raise RenderError(
            f"trace covers {len(trace_frames)} frame(s) and trajectory {len(sample_frames)}; "
            "frame sequences must match"
        )

    indexes = list(range(0, len(samples), stride))
    if samples and indexes[-1] != len(samples) - 1:
        indexes.append(len(samples) - 1)

    out = io.StringIO()
    for i in indexes:
        out.write(render_block(doc, samples[i], doc.frames[i], cols=cols))
        out.write("\n\n")
    return out.getvalue()
