"""Dihedral relabelling of the polygon and canonical forms.

Two tilings are the same when one diagram is carried to the other by one of
the 2n rotations and reflections of the polygon. Both kinds act on corners
by an affine map i -> a*i + c with a = +1 (rotation) or -1 (reflection); the
induced action on edge labels is i -> i+c and i -> c-i-1 respectively.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, List, NamedTuple, Sequence, Tuple, Union

from core.errors import SizeMismatch
from core.model import DecoratedCorner, EdgePair, PlanarDiagram, Sign, VertexSet, new_diagram
from core.trace import diagram_of

# Flat (partner, sign bit) per edge; + encodes as 0 so + sorts before -.
CanonicalKey = Tuple[int, ...]


class Kind(str, enum.Enum):
    ROTATION = "rotation"
    REFLECTION = "reflection"


@dataclass(frozen=True)
class DihedralElement:
    n: int
    kind: Kind
    c: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", self.c % self.n)

    @classmethod
    def rotation(cls, n: int, c: int = 0) -> "DihedralElement":
        return cls(n, Kind.ROTATION, c)

    @classmethod
    def reflection(cls, n: int, c: int = 0) -> "DihedralElement":
        return cls(n, Kind.REFLECTION, c)

    @property
    def slope(self) -> int:
        return 1 if self.kind is Kind.ROTATION else -1

    @property
    def is_identity(self) -> bool:
        return self.kind is Kind.ROTATION and self.c == 0

    def corner(self, i: int) -> int:
        return (self.slope * i + self.c) % self.n

    def edge(self, i: int) -> int:
        if self.kind is Kind.ROTATION:
            return (i + self.c) % self.n
        return (self.c - i - 1) % self.n

    def inverse(self) -> "DihedralElement":
        if self.kind is Kind.ROTATION:
            return DihedralElement.rotation(self.n, -self.c)
        return self

    def compose(self, other: "DihedralElement") -> "DihedralElement":
        """self after other."""
        if self.n != other.n:
            raise SizeMismatch(f"Cannot compose elements for n={self.n} and n={other.n}.")
        slope = self.slope * other.slope
        c = self.slope * other.c + self.c
        kind = Kind.ROTATION if slope == 1 else Kind.REFLECTION
        return DihedralElement(self.n, kind, c)

    def __str__(self) -> str:
        return f"{self.kind.value}({self.c})"


def elements(n: int) -> Iterator[DihedralElement]:
    """All 2n elements, identity first."""
    for c in range(n):
        yield DihedralElement.rotation(n, c)
    for c in range(n):
        yield DihedralElement.reflection(n, c)


def edge_permutations(n: int) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """(forward, inverse) edge maps of every non-identity element."""
    perms = []
    for g in elements(n):
        if g.is_identity:
            continue
        fwd = tuple(g.edge(i) for i in range(n))
        inv = [0] * n
        for i, j in enumerate(fwd):
            inv[j] = i
        perms.append((fwd, tuple(inv)))
    return perms


# ---------------------------------------------------------------------------
# Actions
# ---------------------------------------------------------------------------

def transform_diagram(d: PlanarDiagram, g: DihedralElement) -> PlanarDiagram:
    """Relabel edges; decorations are unchanged."""
    if g.n != d.n:
        raise SizeMismatch(f"Element for n={g.n} applied to a diagram with n={d.n}.")
    return new_diagram(d.n, [EdgePair(g.edge(p.a), g.edge(p.b), p.sign) for p in d.pairs])


def transform_vertex_set(vs: VertexSet, g: DihedralElement) -> VertexSet:
    """Relabel corners; a reflection also reverses every circular order.

    A reversed cycle with flipped signs is the same vertex, so reversing and
    flipping every sign in place are the same operation here.
    """
    if g.n != vs.n:
        raise SizeMismatch(f"Element for n={g.n} applied to a vertex set with n={vs.n}.")
    cycles = []
    for vertex in vs.vertices:
        mapped = [DecoratedCorner(g.corner(c.corner), c.sign) for c in vertex.cycle]
        if g.kind is Kind.REFLECTION:
            mapped.reverse()
        cycles.append(mapped)
    return VertexSet.build(vs.n, cycles)


# ---------------------------------------------------------------------------
# Canonical forms
# ---------------------------------------------------------------------------

class CanonicalForm(NamedTuple):
    key: CanonicalKey
    representative: PlanarDiagram
    stabilizer_order: int

    @property
    def orbit_size(self) -> int:
        return 2 * self.representative.n // self.stabilizer_order


def encode(d: PlanarDiagram) -> CanonicalKey:
    flat: List[int] = []
    for partner, sign in d.table:
        flat.extend((partner, int(sign)))
    return tuple(flat)


def _encode_image(table: Sequence[Tuple[int, Sign]], fwd: Sequence[int]) -> CanonicalKey:
    n = len(table)
    flat = [0] * (2 * n)
    for i, (partner, sign) in enumerate(table):
        k = fwd[i]
        flat[2 * k] = fwd[partner]
        flat[2 * k + 1] = int(sign)
    return tuple(flat)


def orbit_keys(d: PlanarDiagram) -> List[CanonicalKey]:
    """Encodings of g(d) for every element g, in :func:`elements` order."""
    return [_encode_image(d.table, [g.edge(i) for i in range(d.n)]) for g in elements(d.n)]


def diagram_from_key(n: int, key: CanonicalKey) -> PlanarDiagram:
    if len(key) != 2 * n:
        raise SizeMismatch(f"A key for n={n} has {2 * n} entries, got {len(key)}.")
    pairs = []
    for i in range(n):
        partner, bit = key[2 * i], key[2 * i + 1]
        if i < partner:
            pairs.append(EdgePair(i, partner, Sign(bit)))
    return new_diagram(n, pairs)


def canonical_form(d: PlanarDiagram) -> CanonicalForm:
    keys = orbit_keys(d)
    own = keys[0]
    best = min(keys)
    stabilizer = sum(1 for k in keys if k == own)
    representative = d if best == own else diagram_from_key(d.n, best)
    return CanonicalForm(best, representative, stabilizer)


def is_canonical(d: PlanarDiagram) -> bool:
    own = encode(d)
    return all(own <= k for k in orbit_keys(d))


def equivalent(
    a: Union[PlanarDiagram, VertexSet], b: Union[PlanarDiagram, VertexSet]
) -> bool:
    if a.n != b.n:
        raise SizeMismatch(f"Cannot compare tilings of a {a.n}-gon and a {b.n}-gon.")
    da = diagram_of(a) if isinstance(a, VertexSet) else a
    db = diagram_of(b) if isinstance(b, VertexSet) else b
    return canonical_form(da).key == canonical_form(db).key


def chord_lengths(d: PlanarDiagram) -> Tuple[int, ...]:
    """Sorted circular spans of the pairs; constant on an orbit."""
    return tuple(sorted(min((p.b - p.a) % d.n, (p.a - p.b) % d.n) for p in d.pairs))
