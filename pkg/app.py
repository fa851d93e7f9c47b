"""Command-line entry point: ``python app.py <subcommand> ...``."""
from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import List, Optional, Sequence

from dotenv import load_dotenv

load_dotenv()

from core import __version__  # noqa: E402
from core.errors import TilingError, TooLarge  # noqa: E402
from core.feasibility import (  # noqa: E402
    MIN_POLYGON_SIZE,
    admissible_tilings,
    describe_bounds,
    max_polygon_size,
    tile_count_bounds,
)
from core.formats import (  # noqa: E402
    CatalogFile,
    format_diagram,
    format_vertex_set,
    parse_diagram,
    parse_tiling,
    read_catalog,
    write_catalog,
)
from core.model import PlanarDiagram, VertexSet  # noqa: E402

logger = logging.getLogger("singletile")

DEFAULT_THREADS = int(os.getenv("TILING_THREADS", "1"))
DEFAULT_LOG_LEVEL = os.getenv("TILING_LOG_LEVEL", "WARNING")
LONG_NODE_LIMIT = int(float(os.getenv("TILING_LONG_NODE_LIMIT", "1e9")))


def _vertex_set(text: str) -> VertexSet:
    from core.trace import oriented

    value = parse_tiling(text)
    if isinstance(value, PlanarDiagram):
        raise TilingError(f"Expected a vertex set, got a diagram: {text!r}")
    return oriented(value)


def _diagram_or_set(text: str):
    value = parse_tiling(text)
    if isinstance(value, VertexSet):
        from core.trace import oriented

        return oriented(value)
    return value


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_bounds(args: argparse.Namespace) -> int:
    if args.n is not None:
        print(describe_bounds(tile_count_bounds(args.n, args.chi)))
        return 0
    top = max(max_polygon_size(args.chi, odd=True), max_polygon_size(args.chi, odd=False))
    for n in range(MIN_POLYGON_SIZE, top + 1):
        if n <= max_polygon_size(args.chi, odd=bool(n % 2)):
            print(f"n={n}: {describe_bounds(tile_count_bounds(n, args.chi))}")
    return 0


def cmd_admissible(args: argparse.Namespace) -> int:
    for n, counts in admissible_tilings(args.chi):
        print(f"{n}: {' '.join(map(str, counts))}")
    return 0


def cmd_vertices(args: argparse.Namespace) -> int:
    from core.trace import vertices_of

    print(format_vertex_set(vertices_of(parse_diagram(args.diagram))))
    return 0


def cmd_diagram(args: argparse.Namespace) -> int:
    from core.trace import diagram_of

    print(format_diagram(diagram_of(_vertex_set(args.vertex_set))))
    return 0


def cmd_validate(args: argparse.Namespace) -> int:
    from core.trace import validate_vertex_set

    value = parse_tiling(args.vertex_set)
    if isinstance(value, PlanarDiagram):
        raise TilingError("validate expects a vertex set")
    report = validate_vertex_set(value)
    if report.ok:
        print("pass")
        return 0
    print(f"fail {report.condition}: {report.message}")
    for condition, message in report.violations[1:]:
        print(f"  {condition}: {message}")
    return 1


def cmd_classify(args: argparse.Namespace) -> int:
    from core.trace import classify

    s = classify(parse_diagram(args.diagram))
    degrees = ",".join(map(str, s.degree_multiset))
    orientable = "orientable" if s.orientable else "non-orientable"
    line = f"{s.surface_name} chi={s.chi} v={s.v} e={s.e} {orientable} degrees={degrees}"
    if s.degree_too_small:
        line += " degree-too-small"
    print(line)
    return 0


def cmd_canon(args: argparse.Namespace) -> int:
    from core.symmetry import canonical_form

    form = canonical_form(parse_diagram(args.diagram))
    print(format_diagram(form.representative))
    print(f"stabilizer {form.stabilizer_order}, orbit {form.orbit_size}")
    return 0


def cmd_eq(args: argparse.Namespace) -> int:
    from core.symmetry import equivalent

    print("equivalent" if equivalent(_diagram_or_set(args.a), _diagram_or_set(args.b)) else "not equivalent")
    return 0


def cmd_enumerate(args: argparse.Namespace) -> int:
    from core.enumerate import (
        Emit,
        EnumerationRequest,
        Mode,
        enumerate_diagrams,
        enumerate_naive,
        raw_space_estimate,
    )

    mode = Mode.ORIENTABLE_ONLY if args.orientable_only else Mode.ALL_SIGNED
    emit = Emit.STREAM_CATALOG if args.out and not args.count_only else Emit.COUNT_ONLY
    req = EnumerationRequest(
        n=args.n,
        mode=mode,
        chi=args.chi,
        surface=args.surface,
        emit=emit,
        threads=args.threads,
        prefix_pruning=not args.no_prefix_pruning,
    )
    estimate = raw_space_estimate(args.n, mode)
    if estimate > args.node_limit and not args.long:
        raise TooLarge(f"n={args.n} has a raw search space of {estimate} nodes; rerun with --long.", estimate)

    catalog: List[PlanarDiagram] = []
    if args.naive:
        result = enumerate_naive(req, allow_large=args.long)
    else:
        store = None
        if args.long and emit is Emit.COUNT_ONLY:
            from core.database import CheckpointStore

            store = CheckpointStore()
        result = enumerate_diagrams(req, catalog.append if emit is Emit.STREAM_CATALOG else None, store)

    for surface, count in result.counts.items():
        print(f"{surface} {args.n} {count}")
    if not result.counts:
        print(f"{args.surface or '-'} {args.n} 0")
    if emit is Emit.STREAM_CATALOG:
        label = args.surface or (f"chi={args.chi}" if args.chi is not None else "all")
        write_catalog(args.out, CatalogFile(label, args.n, catalog))
        print(f"wrote {len(catalog)} entries to {args.out}", file=sys.stderr)
    return 0


def cmd_census(args: argparse.Namespace) -> int:
    from core.enumerate import census

    store = None
    if args.long:
        from core.database import CheckpointStore

        store = CheckpointStore()
    row = census(args.surface, threads=args.threads, long=args.long, store=store, node_limit=args.node_limit)
    for n in sorted(row.counts):
        print(f"{row.surface_name} {n} {row.counts[n]}")
    for n in sorted(row.skipped):
        print(
            f"{row.surface_name} {n} skipped: raw space {row.skipped[n]} exceeds {args.node_limit} (use --long)",
            file=sys.stderr,
        )
    if args.chart:
        from core.charts import write_chart

        write_chart(args.chart, [row], log_scale=args.log_scale)
    return 0


def cmd_render(args: argparse.Namespace) -> int:
    from core.render import render_gallery, render_svg, write_svg

    if args.catalog:
        svg = render_gallery(read_catalog(args.catalog).diagrams, columns=args.columns)
    else:
        svg = render_svg(parse_diagram(args.diagram))
    write_svg(args.out, svg)
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    from core.compare import compare, load_entries

    report = compare(load_entries(args.a), load_entries(args.b))
    if args.records:
        for record in report.records():
            print(record)
    else:
        print(report.render_text())
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="singletile",
        description="Single-tile tilings of closed surfaces: diagrams, vertex sets, census.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=DEFAULT_LOG_LEVEL,
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"], type=str.upper,
                        help="diagnostics on stderr [default %(default)s]")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="admissible tile counts for an n-gon on a surface")
    p.add_argument("--chi", type=int, required=True)
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("admissible", help="every admissible (n, f) for a surface")
    p.add_argument("--chi", type=int, required=True)
    p.set_defaults(func=cmd_admissible)

    p = sub.add_parser("vertices", help="vertex set of a diagram")
    p.add_argument("--diagram", required=True)
    p.set_defaults(func=cmd_vertices)

    p = sub.add_parser("diagram", help="diagram of a vertex set")
    p.add_argument("--vertex-set", required=True)
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("validate", help="check a vertex set condition by condition")
    p.add_argument("--vertex-set", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("classify", help="surface, Euler number and degrees of a diagram")
    p.add_argument("--diagram", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("canon", help="canonical representative and stabilizer")
    p.add_argument("--diagram", required=True)
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("eq", help="are two tilings the same up to relabelling")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_eq)

    p = sub.add_parser("enumerate", help="count or list tilings of one n-gon")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--orientable-only", action="store_true")
    which = p.add_mutually_exclusive_group()
    which.add_argument("--surface")
    which.add_argument("--chi", type=int)
    p.add_argument("--naive", action="store_true", help="classify every matching (small n only)")
    p.add_argument("--out", help="write the catalog here")
    p.add_argument("--count-only", action="store_true")
    _add_run_options(p)
    p.add_argument("--no-prefix-pruning", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("census", help="counts for every n on one surface")
    p.add_argument("--surface", required=True)
    _add_run_options(p)
    p.add_argument("--chart", help="write an HTML bar chart here")
    p.add_argument("--log-scale", action="store_true")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("render", help="SVG chord diagram")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--diagram")
    source.add_argument("--catalog", help="render every entry of a catalog file")
    p.add_argument("--out", required=True)
    p.add_argument("--columns", type=int, default=4)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("compare", help="compare two lists of tilings")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--records", action="store_true", help="tab-separated records instead of text")
    p.set_defaults(func=cmd_compare)

    return parser


def _add_run_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--long", action="store_true", help="allow runs above the node limit, with checkpoints")
    p.add_argument("--threads", type=int, default=DEFAULT_THREADS)
    p.add_argument("--node-limit", type=int, default=LONG_NODE_LIMIT, help=argparse.SUPPRESS)


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    if getattr(args, "naive", False) and args.out:
        parser.print_usage(sys.stderr)
        print("singletile: error: --naive does not write catalogs", file=sys.stderr)
        return 2
    if getattr(args, "threads", 1) < 1:
        print("singletile: error: --threads must be at least 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except TilingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(run())
