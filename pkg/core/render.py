from __future__ import annotations

import io
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import matplotlib as mpl
mpl.use("Agg")

from matplotlib.figure import Figure
from matplotlib.patches import Circle, PathPatch, Polygon
from matplotlib.path import Path

from core.model import PlanarDiagram, Sign
from core.trace import vertices_of

# ---------------------------------------------------------------------------
# Palette
# ---------------------------------------------------------------------------

OPPOSING_COLOR = "#000000"
TWISTED_COLOR = "#9E9E9E"
OUTLINE_COLOR = "#2C1A0E"
LABEL_COLOR = "#5C4A3A"

# Vertex classes cycle through these.
VERTEX_COLORS = (
    "#E53935", "#1E88E5", "#43A047", "#FB8C00", "#8E24AA",
    "#00ACC1", "#F4511E", "#3949AB", "#C0CA33", "#6D4C41",
)

# Fixed hash salt; with Date unset the SVG is byte-identical across runs.
SVG_RC = {"svg.hashsalt": "single-tile", "svg.fonttype": "none"}

POINTS_PER_INCH = 72


@dataclass(frozen=True)
class RenderOptions:
    size: int = 320
    margin: int = 28
    show_labels: bool = True
    color_vertices: bool = True
    stroke_width: float = 2.0
    dot_radius: float = 5.0


Point = Tuple[float, float]


def _corner_points(n: int) -> List[Point]:
    # corner 0 on the positive x axis, numbering counterclockwise
    return [(math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n)) for i in range(n)]


def _midpoint(p: Point, q: Point) -> Point:
    return (p[0] + q[0]) / 2, (p[1] + q[1]) / 2


def corner_colors(d: PlanarDiagram) -> Dict[int, str]:
    """Fill colour of each corner: corners at the same vertex share one."""
    colors: Dict[int, str] = {}
    for idx, vertex in enumerate(vertices_of(d).vertices):
        for corner in vertex.corners:
            colors[corner] = VERTEX_COLORS[idx % len(VERTEX_COLORS)]
    return colors


def _draw_diagram(ax, d: PlanarDiagram, opts: RenderOptions) -> None:
    # data units: the polygon has circumradius 1; margin and dot sizes are in points
    extent = opts.size / (opts.size - 2 * opts.margin)
    ax.set_xlim(-extent, extent)
    ax.set_ylim(-extent, extent)
    ax.set_aspect("equal")
    ax.set_axis_off()
    unit = opts.size / (2 * extent)

    corners = _corner_points(d.n)
    mids = [_midpoint(corners[i], corners[(i + 1) % d.n]) for i in range(d.n)]

    outline = Polygon(corners, closed=True, fill=False,
                      edgecolor=OUTLINE_COLOR, linewidth=opts.stroke_width)
    outline.set_gid("outline")
    ax.add_patch(outline)

    counts = {Sign.PLUS: 0, Sign.MINUS: 0}
    for p in d.pairs:
        a, b = mids[p.a], mids[p.b]
        # bow the chord toward the centre
        control = (_midpoint(a, b)[0] / 2, _midpoint(a, b)[1] / 2)
        path = Path([a, control, b], [Path.MOVETO, Path.CURVE3, Path.CURVE3])
        twisted = p.sign is Sign.MINUS
        chord = PathPatch(path, fill=False, linewidth=opts.stroke_width,
                          edgecolor=TWISTED_COLOR if twisted else OPPOSING_COLOR)
        chord.set_gid(f"chord-{'twisted' if twisted else 'opposing'}-{counts[p.sign]}")
        counts[p.sign] += 1
        ax.add_patch(chord)

    colors = corner_colors(d) if opts.color_vertices else {}
    for i, (px, py) in enumerate(corners):
        dot = Circle((px, py), opts.dot_radius / unit, facecolor=colors.get(i, OUTLINE_COLOR),
                     edgecolor="none", zorder=3)
        dot.set_gid(f"corner-{i}")
        ax.add_patch(dot)
        if opts.show_labels:
            offset = 1 + 14 / unit
            label = ax.text(px * offset, py * offset, str(i), fontsize=8,
                            ha="center", va="center", color=LABEL_COLOR)
            label.set_gid(f"label-{i}")


def _to_svg(fig: Figure) -> str:
    buf = io.BytesIO()
    with mpl.rc_context(SVG_RC):
        fig.savefig(buf, format="svg", metadata={"Date": None})
    return buf.getvalue().decode("utf-8")


def render_svg(d: PlanarDiagram, options: Optional[RenderOptions] = None) -> str:
    """Chord diagram of one tiling: black chords glue opposing pairs, gray ones twisted pairs."""
    opts = options or RenderOptions()
    side = opts.size / POINTS_PER_INCH
    fig = Figure(figsize=(side, side), dpi=POINTS_PER_INCH)
    ax = fig.add_axes((0, 0, 1, 1))
    ax.set_gid("tiling-0")
    _draw_diagram(ax, d, opts)
    return _to_svg(fig)


def render_gallery(
    diagrams: Sequence[PlanarDiagram],
    columns: int = 4,
    options: Optional[RenderOptions] = None,
) -> str:
    opts = options or RenderOptions(size=180, margin=22, show_labels=False)
    columns = max(1, min(columns, len(diagrams) or 1))
    rows = max(1, math.ceil(len(diagrams) / columns))
    side = opts.size / POINTS_PER_INCH
    fig = Figure(figsize=(columns * side, rows * side), dpi=POINTS_PER_INCH)
    for idx, d in enumerate(diagrams):
        row, col = divmod(idx, columns)
        ax = fig.add_axes((col / columns, 1 - (row + 1) / rows, 1 / columns, 1 / rows))
        ax.set_gid(f"tiling-{idx}")
        _draw_diagram(ax, d, opts)
    return _to_svg(fig)


def write_svg(path: str, svg: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(svg)
