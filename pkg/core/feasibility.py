from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from core.errors import OutOfScope

# Below 7 sides the tile-count bound is not finite.
MIN_POLYGON_SIZE = 7
# Single-tile censuses start at the first even size in scope.
MIN_SINGLE_TILE_SIZE = 8


@dataclass(frozen=True)
class TileBounds:
    """Admissible tile counts f: lower_exclusive < f <= upper_inclusive."""

    n: int
    chi: int
    lower_exclusive: Fraction
    upper_inclusive: Fraction
    max_is_all_degree_three: bool

    @property
    def max_tiles(self) -> int:
        return math.floor(self.upper_inclusive)

    def __contains__(self, f: int) -> bool:
        return self.lower_exclusive < f <= self.upper_inclusive


def _check_chi(chi: int) -> None:
    if chi >= 0:
        raise OutOfScope(f"Only hyperbolic surfaces (chi < 0) are in scope, got chi={chi}.")


def tile_count_bounds(n: int, chi: int) -> TileBounds:
    """Bound the number of n-gon tiles on a surface of Euler number chi.

    The upper bound is reached exactly when every vertex has degree 3, so
    the flag is set when that bound is a whole number that the parity rule
    for odd n allows.
    """
    if n < MIN_POLYGON_SIZE:
        raise OutOfScope(f"The tile count is only bounded for n >= {MIN_POLYGON_SIZE}, got n={n}.")
    _check_chi(chi)
    lower = Fraction(-2 * chi, n - 2)
    upper = Fraction(-6 * chi, n - 6)
    attained = upper.denominator == 1 and (n % 2 == 0 or upper.numerator % 2 == 0)
    return TileBounds(n, chi, lower, upper, attained)


def max_polygon_size(chi: int, odd: bool) -> int:
    """Largest n for which an n-gon tiling of the surface can exist."""
    _check_chi(chi)
    return 3 * (2 - chi) if odd else 6 * (1 - chi)


def admissible_tile_counts(n: int, chi: int) -> List[int]:
    bounds = tile_count_bounds(n, chi)
    first = math.floor(bounds.lower_exclusive) + 1
    counts = range(first, bounds.max_tiles + 1)
    # an odd polygon can only tile with an even number of copies
    return [f for f in counts if n % 2 == 0 or f % 2 == 0]


def admissible_tilings(chi: int) -> List[Tuple[int, List[int]]]:
    """Every (n, [f, ...]) combination allowed by the tile-count bounds."""
    _check_chi(chi)
    rows = []
    top = max(max_polygon_size(chi, odd=True), max_polygon_size(chi, odd=False))
    for n in range(MIN_POLYGON_SIZE, top + 1):
        if n > max_polygon_size(chi, odd=bool(n % 2)):
            continue
        counts = admissible_tile_counts(n, chi)
        if counts:
            rows.append((n, counts))
    return rows


def single_tile_n_range(chi: int) -> Tuple[int, int]:
    _check_chi(chi)
    return max(MIN_SINGLE_TILE_SIZE, 2 * (2 - chi)), 6 * (1 - chi)


def vertex_count(n: int, chi: int) -> int:
    """Vertices of a single-tile tiling: v = e - 1 + chi."""
    return n // 2 - 1 + chi


def format_fraction(value: Fraction) -> str:
    """Decimal text when the expansion terminates, a/b otherwise."""
    if value.denominator == 1:
        return str(value.numerator)
    den = value.denominator
    for p in (2, 5):
        while den % p == 0:
            den //= p
    if den != 1:
        return f"{value.numerator}/{value.denominator}"
    digits = 0
    scaled = value
    while scaled.denominator != 1:
        scaled *= 10
        digits += 1
    text = f"{abs(scaled.numerator):0{digits + 1}d}"
    sign = "-" if value < 0 else ""
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


def describe_bounds(bounds: TileBounds) -> str:
    low = format_fraction(bounds.lower_exclusive)
    high = format_fraction(bounds.upper_inclusive)
    if bounds.max_is_all_degree_three:
        tail = f"f={bounds.max_tiles} attains max (all vertices degree 3)"
    else:
        tail = "max not attained"
    return f"f in ({low}, {high}]; {tail}"
