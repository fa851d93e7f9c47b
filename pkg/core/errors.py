from __future__ import annotations

from typing import Optional


class TilingError(ValueError):
    """Base class for every domain error raised by the library."""


class NotEven(TilingError):
    pass


class NotAMatching(TilingError):
    pass


class SelfPair(TilingError):
    pass


class InconsistentOrientability(TilingError):
    pass


class OutOfScope(TilingError):
    pass


class Inconsistent(TilingError):
    pass


class NotTwoToOne(TilingError):
    pass


class NotPartition(TilingError):
    pass


class SizeMismatch(TilingError):
    pass


class FilterContradiction(TilingError):
    pass


class TooLarge(TilingError):
    def __init__(self, message: str, estimate: int) -> None:
        super().__init__(message)
        self.estimate = estimate


class UnknownSurface(TilingError):
    pass


class NotationError(TilingError):
    """Text that does not follow one of the notations in core.formats."""

    def __init__(
        self,
        message: str,
        position: Optional[int] = None,
        line: Optional[int] = None,
        column: Optional[int] = None,
    ) -> None:
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.position = position
        self.line = line
        self.column = column


class CountMismatch(TilingError):
    pass


class NonCanonicalLine(TilingError):
    pass


class CatalogOrderError(TilingError):
    pass


class SelfMirrorCycle(RuntimeError):
    """A successor cycle met its own mirror image; the diagram data is corrupt."""
