from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from enum import IntEnum
from functools import cached_property
from typing import Iterable, Iterator, List, NamedTuple, Sequence, Tuple, Union

from core.errors import (
    InconsistentOrientability,
    NotAMatching,
    NotEven,
    NotPartition,
    SelfPair,
    UnknownSurface,
)

# Corners and edge labels are plain residues mod n. Edge i joins corner i to i+1.
Corner = int
EdgeLabel = int


# ---------------------------------------------------------------------------
# Signs and decorated corners
# ---------------------------------------------------------------------------

class Sign(IntEnum):
    """Gluing sign of an edge pair; orders + before -."""

    PLUS = 0
    MINUS = 1

    def __neg__(self) -> "Sign":
        return Sign.MINUS if self is Sign.PLUS else Sign.PLUS

    @property
    def symbol(self) -> str:
        return "+" if self is Sign.PLUS else "-"

    @classmethod
    def parse(cls, text: Union[str, "Sign", None]) -> "Sign":
        if text is None:
            return cls.PLUS
        if isinstance(text, Sign):
            return text
        text = str(text).strip()
        if text in ("", "+"):
            return cls.PLUS
        if text in ("-", "−"):
            return cls.MINUS
        raise ValueError(f"Not a sign: {text!r}")


class DecoratedCorner(NamedTuple):
    corner: Corner
    sign: Sign = Sign.PLUS

    def flipped(self) -> "DecoratedCorner":
        return DecoratedCorner(self.corner, -self.sign)

    def __str__(self) -> str:
        return f"{self.corner}" if self.sign is Sign.PLUS else f"{self.corner}-"


CornerLike = Union[int, DecoratedCorner, Tuple[int, Union[Sign, str]]]


def decorate(item: CornerLike) -> DecoratedCorner:
    """Accept a bare corner (decorated +) or a (corner, sign) pair."""
    if isinstance(item, DecoratedCorner):
        return item
    if isinstance(item, int):
        return DecoratedCorner(item, Sign.PLUS)
    corner, sign = item
    return DecoratedCorner(int(corner), Sign.parse(sign))


# ---------------------------------------------------------------------------
# Edge pairs and planar diagrams
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class EdgePair:
    a: EdgeLabel
    b: EdgeLabel
    sign: Sign = Sign.PLUS

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise SelfPair(f"Edge {self.a} cannot be glued to itself.")
        if self.a > self.b:
            a, b = self.b, self.a
            object.__setattr__(self, "a", a)
            object.__setattr__(self, "b", b)
        object.__setattr__(self, "sign", Sign.parse(self.sign))


PairLike = Union[EdgePair, Tuple[int, int], Tuple[int, int, Union[Sign, str]]]


@dataclass(frozen=True)
class PlanarDiagram:
    """Perfect matching of the n edges of an n-gon into signed pairs.

    Build through :func:`new_diagram`; pairs are kept min-label-first and
    sorted by (a, b, sign), which makes equality of diagrams a plain
    comparison of fields.
    """

    n: int
    pairs: Tuple[EdgePair, ...]

    @property
    def e(self) -> int:
        return self.n // 2

    @cached_property
    def table(self) -> Tuple[Tuple[EdgeLabel, Sign], ...]:
        """(partner, sign) for every edge label, indexed by edge."""
        rows: List[Tuple[EdgeLabel, Sign]] = [(-1, Sign.PLUS)] * self.n
        for p in self.pairs:
            rows[p.a] = (p.b, p.sign)
            rows[p.b] = (p.a, p.sign)
        return tuple(rows)

    def partner(self, edge: EdgeLabel) -> EdgeLabel:
        return self.table[edge % self.n][0]

    def sign_of(self, edge: EdgeLabel) -> Sign:
        return self.table[edge % self.n][1]

    @property
    def is_orientable(self) -> bool:
        return all(p.sign is Sign.PLUS for p in self.pairs)

    def __str__(self) -> str:
        from core.formats import format_diagram

        return format_diagram(self)


def new_diagram(n: int, pairs: Iterable[PairLike]) -> PlanarDiagram:
    """Validate and normalise an edge pairing of an n-gon."""
    if n % 2:
        raise NotEven(f"A planar diagram needs an even polygon size, got n={n}.")
    if n < 4:
        raise NotAMatching(f"A planar diagram needs n >= 4, got n={n}.")

    normalised: List[EdgePair] = []
    for item in pairs:
        if isinstance(item, EdgePair):
            pair = item
        else:
            a, b, *rest = item
            pair = EdgePair(int(a), int(b), Sign.parse(rest[0] if rest else None))
        normalised.append(pair)

    seen = Counter()
    for p in normalised:
        seen[p.a] += 1
        seen[p.b] += 1
    bad = [x for x in seen if not 0 <= x < n]
    if bad:
        raise NotAMatching(f"Edge labels out of range 0..{n - 1}: {sorted(bad)}")
    repeated = sorted(x for x, k in seen.items() if k > 1)
    if repeated:
        raise NotAMatching(f"Edge labels used more than once: {repeated}")
    missing = sorted(set(range(n)) - set(seen))
    if missing:
        raise NotAMatching(f"Edge labels not paired: {missing}")

    return PlanarDiagram(n, tuple(sorted(normalised)))


# ---------------------------------------------------------------------------
# Vertices and vertex sets
# ---------------------------------------------------------------------------

def _mirror(cycle: Sequence[DecoratedCorner]) -> Tuple[DecoratedCorner, ...]:
    return tuple(c.flipped() for c in reversed(cycle))


def _least_rotation(cycle: Tuple[DecoratedCorner, ...]) -> Tuple[DecoratedCorner, ...]:
    return min(cycle[k:] + cycle[:k] for k in range(len(cycle)))


@dataclass(frozen=True, order=True)
class Vertex:
    """Circularly ordered, sign-decorated corners glued to one point.

    Stored as the least sequence among all rotations of the cycle and of its
    sign-flipped reversal, so two equal vertices compare equal.
    """

    cycle: Tuple[DecoratedCorner, ...]

    @classmethod
    def from_cycle(cls, items: Iterable[CornerLike]) -> "Vertex":
        cycle = tuple(decorate(x) for x in items)
        if not cycle:
            raise NotPartition("A vertex needs at least one corner.")
        return cls(min(_least_rotation(cycle), _least_rotation(_mirror(cycle))))

    @property
    def degree(self) -> int:
        return len(self.cycle)

    @property
    def corners(self) -> Tuple[Corner, ...]:
        return tuple(c.corner for c in self.cycle)

    def adjacencies(self) -> Iterator[Tuple[DecoratedCorner, DecoratedCorner]]:
        """Consecutive corners around the cycle, closing back to the start."""
        k = len(self.cycle)
        for idx in range(k):
            yield self.cycle[idx], self.cycle[(idx + 1) % k]

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.cycle) + ")"


@dataclass(frozen=True)
class VertexSet:
    n: int
    vertices: Tuple[Vertex, ...]

    @classmethod
    def build(cls, n: int, cycles: Iterable[Iterable[CornerLike]]) -> "VertexSet":
        """Canonicalise the cycles and check they partition the n corners."""
        vertices = [Vertex.from_cycle(c) for c in cycles]
        counts = Counter(c for v in vertices for c in v.corners)
        out_of_range = sorted(c for c in counts if not 0 <= c < n)
        if out_of_range:
            raise NotPartition(f"Corners out of range 0..{n - 1}: {out_of_range}")
        repeated = sorted(c for c, k in counts.items() if k > 1)
        if repeated:
            raise NotPartition(f"Corners appearing more than once: {repeated}")
        missing = sorted(set(range(n)) - set(counts))
        if missing:
            raise NotPartition(f"Corners not covered by any vertex: {missing}")
        return cls(n, tuple(sorted(vertices)))

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(sorted(v.degree for v in self.vertices))

    @property
    def is_decorated(self) -> bool:
        return any(c.sign is Sign.MINUS for v in self.vertices for c in v.cycle)

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[Vertex]:
        return iter(self.vertices)

    def __str__(self) -> str:
        from core.formats import format_vertex_set

        return format_vertex_set(self)


# ---------------------------------------------------------------------------
# Surfaces
# ---------------------------------------------------------------------------

_SURFACE_RE = re.compile(r"^\s*(\d*)\s*([TP])\^?2\s*$", re.IGNORECASE)


def surface_name(chi: int, orientable: bool) -> str:
    if orientable:
        if chi % 2:
            raise InconsistentOrientability(
                f"An orientable surface has even Euler number, got chi={chi}."
            )
        genus = (2 - chi) // 2
        if genus == 0:
            return "S2"
        return "T2" if genus == 1 else f"{genus}T2"
    crosscaps = 2 - chi
    return "P2" if crosscaps == 1 else f"{crosscaps}P2"


def parse_surface(name: str) -> Tuple[int, bool]:
    """Return (chi, orientable) for names such as 2T2, 3P2, T2 or S2."""
    if name.strip().upper() == "S2":
        return 2, True
    m = _SURFACE_RE.match(name)
    if not m:
        raise UnknownSurface(f"Unknown surface name: {name!r} (expected gT2 or kP2)")
    count = int(m.group(1)) if m.group(1) else 1
    if count < 1:
        raise UnknownSurface(f"Unknown surface name: {name!r}")
    if m.group(2).upper() == "T":
        return 2 - 2 * count, True
    return 2 - count, False


def surface_class(n: int, v: int, all_signs_positive: bool) -> Tuple[int, str]:
    """Euler number and surface name of a single-tile tiling with v vertices."""
    if n % 2:
        raise NotEven(f"A single tile tiling has an even polygon size, got n={n}.")
    if v < 1:
        raise NotPartition(f"A tiling has at least one vertex, got v={v}.")
    chi = v - n // 2 + 1
    return chi, surface_name(chi, all_signs_positive)


@dataclass(frozen=True)
class TilingSummary:
    n: int
    e: int
    v: int
    chi: int
    orientable: bool
    surface_name: str
    degree_multiset: Tuple[int, ...]
    degree_too_small: bool = False

    @property
    def degree_counts(self) -> Counter:
        """v_k: how many vertices have degree k."""
        return Counter(self.degree_multiset)

    def satisfies_degree_equation(self) -> bool:
        lhs = -2 * self.n * self.chi
        rhs = sum(((k - 2) * self.n - 2 * k) * vk for k, vk in self.degree_counts.items())
        return lhs == rhs and sum(self.degree_multiset) == self.n
