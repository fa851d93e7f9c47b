from __future__ import annotations

import logging
import os
from dataclasses import dataclass, field
from typing import Iterable, List, Tuple, Union

from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput

from core import __version__
from core.errors import (
    CatalogOrderError,
    CountMismatch,
    NonCanonicalLine,
    NotationError,
    NotPartition,
    SizeMismatch,
    TilingError,
)
from core.model import DecoratedCorner, PlanarDiagram, Sign, VertexSet, new_diagram

logger = logging.getLogger(__name__)

TOOL_NAME = "singletile"

# ---------------------------------------------------------------------------
# Grammars
# ---------------------------------------------------------------------------

_COMMON = r"""
    size: "n" "=" INT
    sign: PLUS | DASH
    PLUS: "+"
    DASH: /[-−]/
    %import common.INT
    %import common.WS
    %ignore WS
"""

DIAGRAM_GRAMMAR = r"""
    start: size ":" pair ("," pair)*
    pair: INT DASH INT [sign]
""" + _COMMON

VERTEX_SET_GRAMMAR = r"""
    start: size ":" cycle+
    cycle: "(" corner ("," corner)* ")"
    corner: INT [sign]
""" + _COMMON

# Literature lists: one digit per corner, "(10)", "{10}" or "\yar{10}" for
# larger corners, optional "_+" / "_-" decorations.
COMPACT_GRAMMAR = r"""
    start: [size ":"] "(" cycle ("," cycle)* ")"
    cycle: corner+
    corner: label [decoration]
    label: DIGIT
         | "(" INT ")"
         | "{" INT "}"
         | "\\yar{" INT "}"
    decoration: "_" sign
              | "_{" sign "}"
    DIGIT: /[0-9]/
""" + _COMMON


class _TilingTransformer(Transformer):
    """Turns parse trees into plain tuples; validation happens afterwards."""

    def size(self, items):
        return int(items[0])

    def sign(self, items):
        return Sign.parse(str(items[0]))

    def pair(self, items):
        a, _dash, b, sign = items
        return int(a), int(b), sign or Sign.PLUS

    def corner(self, items):
        label, sign = items
        return DecoratedCorner(int(label), sign or Sign.PLUS), sign is not None

    def label(self, items):
        return int(items[0])

    def decoration(self, items):
        return items[0]

    def cycle(self, items):
        return list(items)

    def start(self, items):
        return list(items)


_diagram_parser = Lark(DIAGRAM_GRAMMAR, parser="lalr", maybe_placeholders=True)
_vertex_set_parser = Lark(VERTEX_SET_GRAMMAR, parser="lalr", maybe_placeholders=True)
_compact_parser = Lark(COMPACT_GRAMMAR, parser="lalr", maybe_placeholders=True)


def _parse(parser: Lark, text: str, what: str) -> list:
    try:
        tree = parser.parse(text)
    except UnexpectedInput as exc:
        position = getattr(exc, "pos_in_stream", None)
        column = getattr(exc, "column", None)
        if isinstance(column, int) and column < 0:
            column = None
        raise NotationError(f"Not a valid {what}: {text.strip()!r}", position, None, column) from None
    return _TilingTransformer().transform(tree)


# ---------------------------------------------------------------------------
# Diagrams
# ---------------------------------------------------------------------------

def parse_diagram(text: str) -> PlanarDiagram:
    """Read ``n=<N>: a-b<s>, ...``; a missing sign means +."""
    n, *pairs = _parse(_diagram_parser, text, "diagram")
    return new_diagram(n, pairs)


def format_diagram(d: PlanarDiagram) -> str:
    """Signs are written on every pair unless all of them are +."""
    show = not d.is_orientable
    body = ", ".join(f"{p.a}-{p.b}{p.sign.symbol if show else ''}" for p in d.pairs)
    return f"n={d.n}: {body}"


# ---------------------------------------------------------------------------
# Vertex sets
# ---------------------------------------------------------------------------

def parse_vertex_set(text: str) -> VertexSet:
    n, *cycles = _parse(_vertex_set_parser, text, "vertex set")
    return VertexSet.build(n, [[c for c, _ in cycle] for cycle in cycles])


def format_vertex_set(vs: VertexSet) -> str:
    return f"n={vs.n}: " + "".join(
        "(" + ",".join(str(c) for c in v.cycle) + ")" for v in vs.vertices
    )


def parse_compact_vertex_set(text: str) -> VertexSet:
    """Read the compact literature notation, e.g. ``(036,12(10)7(11),4589)``.

    Without a size prefix n is the number of corners. Lists without any
    decoration are orientable and may write a vertex in either direction, so
    their directions are repaired with :func:`core.trace.orient_cycles`.
    """
    from core.trace import orient_cycles

    items = _parse(_compact_parser, text, "compact vertex set")
    n = items[0]
    cycles = items[1:]
    if n is None:
        n = sum(len(cycle) for cycle in cycles)
    decorated = any(flag for cycle in cycles for _, flag in cycle)
    if decorated:
        return VertexSet.build(n, [[c for c, _ in cycle] for cycle in cycles])
    return orient_cycles(n, [[c.corner for c, _ in cycle] for cycle in cycles])


def _compact_corner(c: DecoratedCorner, decorated: bool) -> str:
    label = str(c.corner) if c.corner < 10 else f"({c.corner})"
    return label + (f"_{c.sign.symbol}" if decorated else "")


def format_compact_vertex_set(vs: VertexSet, with_size: bool = False) -> str:
    decorated = vs.is_decorated
    body = ",".join("".join(_compact_corner(c, decorated) for c in v.cycle) for v in vs.vertices)
    return (f"n={vs.n}: " if with_size else "") + f"({body})"


def parse_tiling(text: str) -> Union[PlanarDiagram, VertexSet]:
    """Parse whichever notation the text is written in."""
    body = text.split(":", 1)[1] if ":" in text else text
    if not body.lstrip().startswith("("):
        return parse_diagram(text)
    try:
        return parse_vertex_set(text)
    except (NotationError, NotPartition) as exc:
        # "(0386,159742)" reads as two out-of-range corners in the comma grammar
        try:
            return parse_compact_vertex_set(text)
        except NotationError:
            if isinstance(exc, NotPartition):
                raise exc from None
            raise


# ---------------------------------------------------------------------------
# Catalog files
# ---------------------------------------------------------------------------

@dataclass
class CatalogFile:
    surface: str
    n: int
    diagrams: List[PlanarDiagram] = field(default_factory=list)
    tool: str = f"{TOOL_NAME} {__version__}"

    @property
    def count(self) -> int:
        return len(self.diagrams)

    def lines(self) -> List[str]:
        header = [
            f"# surface: {self.surface}",
            f"# n: {self.n}",
            f"# count: {self.count}",
            f"# tool: {self.tool}",
        ]
        return header + [format_diagram(d) for d in self.diagrams]


def _check_body(diagrams: Iterable[Tuple[int, PlanarDiagram]], n: int) -> None:
    from core.symmetry import encode, is_canonical

    previous = None
    for line_no, d in diagrams:
        if d.n != n:
            raise SizeMismatch(f"Line {line_no}: diagram has n={d.n}, catalog has n={n}.")
        if not is_canonical(d):
            raise NonCanonicalLine(f"Line {line_no}: {format_diagram(d)} is not its canonical form.")
        key = encode(d)
        if previous is not None and key <= previous:
            raise CatalogOrderError(f"Line {line_no}: entries are not in strictly increasing key order.")
        previous = key


def write_catalog(path: str, catalog: CatalogFile) -> None:
    _check_body(enumerate(catalog.diagrams, start=1), catalog.n)
    folder = os.path.dirname(path)
    if folder:
        os.makedirs(folder, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(catalog.lines()) + "\n")
    logger.info("wrote %d entries to %s", catalog.count, path)


def read_catalog(path: str) -> CatalogFile:
    headers = {}
    body: List[Tuple[int, PlanarDiagram]] = []
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, value = line[1:].partition(":")
                headers[key.strip().lower()] = value.strip()
                continue
            try:
                body.append((line_no, parse_diagram(line)))
            except NotationError as exc:
                raise NotationError(f"{path}: not a diagram", exc.position, line_no, exc.column) from None
            except TilingError as exc:
                raise type(exc)(f"{path} line {line_no}: {exc}") from None

    try:
        n = int(headers["n"])
        declared = int(headers["count"])
    except (KeyError, ValueError):
        raise NotationError(f"{path}: catalog header needs '# n:' and '# count:' lines") from None
    _check_body(body, n)
    if declared != len(body):
        raise CountMismatch(f"{path}: header says {declared} entries, found {len(body)}.")
    return CatalogFile(
        surface=headers.get("surface", ""),
        n=n,
        diagrams=[d for _, d in body],
        tool=headers.get("tool", ""),
    )
