"""Diagrams to vertex sets and back.

A diagram acts on the 2n decorated corners by the successor rule

    i+ : pair (i, j, +) gives (j+1)+      pair (i, j, -) gives j-
    i- : pair (i-1, j, -) gives (j+1)+    pair (i-1, j, +) gives j-

and its cycles are the vertices of the tiling, each seen twice: once from a
+ start and once, reversed with flipped signs, from the matching - start.
"""
from __future__ import annotations

import itertools
import logging
from collections import Counter
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple, Union

from core.errors import Inconsistent, NotPartition, NotTwoToOne, SelfMirrorCycle
from core.model import (
    CornerLike,
    DecoratedCorner,
    EdgePair,
    PlanarDiagram,
    Sign,
    TilingSummary,
    VertexSet,
    decorate,
    new_diagram,
    surface_class,
)

logger = logging.getLogger(__name__)

PLUS, MINUS = Sign.PLUS, Sign.MINUS
MIN_DEGREE = 3
# orient_cycles tries 2**k direction choices
MAX_ORIENTATION_CYCLES = 16

SuccessorTable = Dict[DecoratedCorner, DecoratedCorner]
Adjacency = Tuple[DecoratedCorner, DecoratedCorner]


# ---------------------------------------------------------------------------
# Diagram -> vertices
# ---------------------------------------------------------------------------

def successor(d: PlanarDiagram, c: DecoratedCorner) -> DecoratedCorner:
    n = d.n
    i, s = c
    if s is PLUS:
        j, sign = d.table[i % n]
        return DecoratedCorner((j + 1) % n, PLUS) if sign is PLUS else DecoratedCorner(j, MINUS)
    j, sign = d.table[(i - 1) % n]
    return DecoratedCorner((j + 1) % n, PLUS) if sign is MINUS else DecoratedCorner(j, MINUS)


def successor_table(d: PlanarDiagram) -> SuccessorTable:
    return {
        DecoratedCorner(i, s): successor(d, DecoratedCorner(i, s))
        for i in range(d.n)
        for s in (PLUS, MINUS)
    }


def trace_cycle(d: PlanarDiagram, start: DecoratedCorner) -> List[DecoratedCorner]:
    cycle = [start]
    current = successor(d, start)
    while current != start:
        cycle.append(current)
        current = successor(d, current)
    return cycle


def vertices_of(d: PlanarDiagram) -> VertexSet:
    assigned: Set[int] = set()
    cycles = []
    for i in range(d.n):
        if i in assigned:
            continue
        cycle = trace_cycle(d, DecoratedCorner(i, PLUS))
        corners = [c.corner for c in cycle]
        if len(set(corners)) != len(corners) or assigned.intersection(corners):
            raise SelfMirrorCycle(f"Cycle from corner {i} revisits a corner: {corners}")
        assigned.update(corners)
        cycles.append(cycle)
    return VertexSet.build(d.n, cycles)


# ---------------------------------------------------------------------------
# Vertices -> diagram
# ---------------------------------------------------------------------------

def induced_pair(x: DecoratedCorner, y: DecoratedCorner, n: int) -> Tuple[int, int, Sign]:
    """The edge pair forced by corner y following corner x at a vertex."""
    i, s = x
    j, t = y
    if s is PLUS and t is PLUS:
        return i, (j - 1) % n, PLUS
    if s is PLUS:
        return i, j, MINUS
    if t is PLUS:
        return (i - 1) % n, (j - 1) % n, MINUS
    return (i - 1) % n, j, PLUS


def _normal_pair(a: int, b: int, sign: Sign) -> Tuple[int, int, Sign]:
    return (a, b, sign) if a <= b else (b, a, sign)


def _cycles_of(vs: Union[VertexSet, Iterable[Iterable[CornerLike]]]) -> List[Tuple[DecoratedCorner, ...]]:
    if isinstance(vs, VertexSet):
        return [v.cycle for v in vs.vertices]
    return [tuple(decorate(x) for x in cycle) for cycle in vs]


def _adjacencies(cycles: Sequence[Sequence[DecoratedCorner]]) -> List[Adjacency]:
    out = []
    for cycle in cycles:
        k = len(cycle)
        out.extend((cycle[idx], cycle[(idx + 1) % k]) for idx in range(k))
    return out


def diagram_of(vs: Union[VertexSet, Iterable[Iterable[CornerLike]]], n: Optional[int] = None) -> PlanarDiagram:
    """Recover the planar diagram that induces a vertex set.

    Undecorated corners count as +, which makes the orientable formula
    ij... => (i, j-1) the all-+ case.
    """
    if not isinstance(vs, VertexSet):
        if n is None:
            raise NotPartition("A raw list of cycles needs the polygon size n.")
        vs = VertexSet.build(n, vs)
    n = vs.n

    partner: Dict[int, Tuple[int, Sign]] = {}
    induced: Counter = Counter()
    for x, y in _adjacencies(_cycles_of(vs)):
        a, b, sign = induced_pair(x, y, n)
        if a == b:
            raise Inconsistent(f"Corners {x},{y} would glue edge {a} to itself.")
        for edge, other in ((a, b), (b, a)):
            known = partner.setdefault(edge, (other, sign))
            if known != (other, sign):
                raise Inconsistent(
                    f"Edge {edge} is induced with partner {known[0]}{known[1].symbol} "
                    f"and with {other}{sign.symbol}."
                )
        induced[_normal_pair(a, b, sign)] += 1

    wrong = {pair: k for pair, k in induced.items() if k != 2}
    if wrong:
        pair, k = min(wrong.items())
        raise NotTwoToOne(f"Edge pair {pair[0]}-{pair[1]}{pair[2].symbol} is induced {k} times, not twice.")
    return new_diagram(n, [EdgePair(a, b, s) for a, b, s in induced])


# ---------------------------------------------------------------------------
# Vertex-set validation
# ---------------------------------------------------------------------------

class ValidationReport(NamedTuple):
    ok: bool
    condition: Optional[str]
    message: str
    violations: Tuple[Tuple[str, str], ...] = ()


CONDITIONS = ("partition", "degree", "adjacent", "closure", "skip")


def _mirror_adjacency(adj: Adjacency) -> Adjacency:
    x, y = adj
    return y.flipped(), x.flipped()


def _normal_adjacency(adj: Adjacency) -> Adjacency:
    return min(adj, _mirror_adjacency(adj))


def pair_adjacencies(a: int, b: int, sign: Sign, n: int) -> Tuple[Adjacency, Adjacency]:
    """The two adjacencies (up to mirror) that an edge pair induces."""
    if sign is PLUS:
        return (
            (DecoratedCorner(a, PLUS), DecoratedCorner((b + 1) % n, PLUS)),
            (DecoratedCorner(b, PLUS), DecoratedCorner((a + 1) % n, PLUS)),
        )
    return (
        (DecoratedCorner(a, PLUS), DecoratedCorner(b, MINUS)),
        (DecoratedCorner((a + 1) % n, MINUS), DecoratedCorner((b + 1) % n, PLUS)),
    )


def validate_vertex_set(
    vs: Union[VertexSet, Iterable[Iterable[CornerLike]]],
    n: Optional[int] = None,
    min_degree: int = MIN_DEGREE,
) -> ValidationReport:
    """Check a candidate vertex set against the vertex-set criteria.

    Conditions, in reporting order: partition of the corners, (a) degree at
    least ``min_degree``, (b) no adjacent i+(i+1)+, (c) every induced pair is
    induced by its companion adjacency too, (d) no adjacent i+(i+2)+.
    """
    if isinstance(vs, VertexSet):
        n = vs.n
    elif n is None:
        raise NotPartition("A raw list of cycles needs the polygon size n.")
    cycles = _cycles_of(vs)
    violations: List[Tuple[str, str]] = []

    counts = Counter(c.corner for cycle in cycles for c in cycle)
    if any(k != 1 for k in counts.values()) or set(counts) != set(range(n)) or not all(cycles):
        violations.append(("partition", "corners do not form a partition of 0..n-1"))
        return ValidationReport(False, "partition", violations[0][1], tuple(violations))

    for cycle in cycles:
        if len(cycle) < min_degree:
            label = ",".join(str(c) for c in cycle)
            violations.append(("degree", f"vertex ({label}) has degree {len(cycle)} < {min_degree}"))

    adjacencies = _adjacencies(cycles)
    present = {_normal_adjacency(adj) for adj in adjacencies}

    for x, y in map(_normal_adjacency, adjacencies):
        forward = x.sign is PLUS and y.sign is PLUS and y.corner == (x.corner + 1) % n
        backward = x.sign is MINUS and y.sign is MINUS and x.corner == (y.corner + 1) % n
        if forward or backward:
            violations.append(("adjacent", f"corners {x},{y} are adjacent in the polygon"))

    for adj in adjacencies:
        a, b, sign = induced_pair(*adj, n)
        if a == b:
            continue
        for needed in pair_adjacencies(a, b, sign, n):
            if _normal_adjacency(needed) not in present:
                x, y = adj
                u, w = needed
                violations.append(("closure", f"{x},{y} needs {u},{w} at some vertex"))
                break

    for x, y in map(_normal_adjacency, adjacencies):
        if x.sign is PLUS and y.sign is PLUS and y.corner == (x.corner + 2) % n:
            violations.append(("skip", f"corners {x},{y} skip exactly one corner"))
        elif x.sign is MINUS and y.sign is MINUS and x.corner == (y.corner + 2) % n:
            violations.append(("skip", f"corners {x},{y} skip exactly one corner"))

    if not violations:
        return ValidationReport(True, None, "valid vertex set", ())
    ordered = sorted(violations, key=lambda v: CONDITIONS.index(v[0]))
    return ValidationReport(False, ordered[0][0], ordered[0][1], tuple(ordered))


def orient_cycles(
    n: int, cycles: Sequence[Sequence[int]], min_degree: int = MIN_DEGREE
) -> VertexSet:
    """Pick directions for undecorated cycles so that they form a vertex set.

    Literature lists often write each vertex in whichever direction came to
    hand. Direction choices are tried in bitmask order, the given directions
    first, and the first valid choice wins.
    """
    cycles = [tuple(int(c) for c in cycle) for cycle in cycles]
    if len(cycles) > MAX_ORIENTATION_CYCLES:
        raise Inconsistent(f"Too many cycles to reorient ({len(cycles)}).")
    found: Optional[VertexSet] = None
    extra = 0
    for flips in itertools.product((False, True), repeat=len(cycles)):
        candidate = [tuple(reversed(c)) if flip else c for c, flip in zip(cycles, flips)]
        if not validate_vertex_set(candidate, n, min_degree).ok:
            continue
        if found is None:
            found = VertexSet.build(n, candidate)
        else:
            extra += 1
    if found is None:
        report = validate_vertex_set(cycles, n, min_degree)
        raise Inconsistent(f"No orientation of the cycles is a vertex set ({report.message}).")
    if extra:
        logger.warning("%d further cycle orientations also validate; keeping the first", extra)
    return found


def oriented(vs: VertexSet, min_degree: int = MIN_DEGREE) -> VertexSet:
    """``vs`` itself when valid or decorated, else its repaired orientation."""
    if vs.is_decorated or validate_vertex_set(vs, min_degree=min_degree).ok:
        return vs
    return orient_cycles(vs.n, [v.corners for v in vs.vertices], min_degree)


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

def classify(d: PlanarDiagram, min_degree: int = MIN_DEGREE) -> TilingSummary:
    vs = vertices_of(d)
    v = len(vs)
    orientable = d.is_orientable
    chi, name = surface_class(d.n, v, orientable)
    degrees = vs.degrees
    summary = TilingSummary(
        n=d.n,
        e=d.e,
        v=v,
        chi=chi,
        orientable=orientable,
        surface_name=name,
        degree_multiset=degrees,
        degree_too_small=any(k < min_degree for k in degrees),
    )
    assert summary.satisfies_degree_equation(), summary
    return summary
