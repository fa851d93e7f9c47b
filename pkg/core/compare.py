"""Compare two lists of tilings up to relabelling of the polygon."""
from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, NamedTuple, Tuple, Union

from core.errors import NotationError, TilingError
from core.formats import format_diagram, parse_tiling
from core.model import PlanarDiagram, VertexSet
from core.symmetry import CanonicalKey, canonical_form, diagram_from_key
from core.trace import diagram_of, oriented

logger = logging.getLogger(__name__)

# Buckets are keyed by polygon size as well, so lists may mix sizes.
EntryKey = Tuple[int, CanonicalKey]


class Entry(NamedTuple):
    source: str
    line: int
    text: str
    value: Union[PlanarDiagram, VertexSet]
    key: EntryKey

    @property
    def where(self) -> str:
        return f"{self.source}:{self.line}"


def as_diagram(value: Union[PlanarDiagram, VertexSet]) -> PlanarDiagram:
    if isinstance(value, PlanarDiagram):
        return value
    return diagram_of(oriented(value))


def key_of(value: Union[PlanarDiagram, VertexSet]) -> EntryKey:
    d = as_diagram(value)
    return d.n, canonical_form(d).key


def entry_key(entry: Entry) -> EntryKey:
    return entry.key


def parse_entries(lines: Iterable[str], source: str = "<input>") -> List[Entry]:
    entries = []
    for line_no, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        try:
            value = parse_tiling(text)
            entries.append(Entry(source, line_no, text, value, key_of(value)))
        except NotationError as exc:
            raise NotationError(f"{source}: {exc}", exc.position, line_no, exc.column) from None
        except TilingError as exc:
            err = type(exc)(f"{source} line {line_no}: {exc}")
            err.line = line_no
            raise err from None
    return entries


def load_entries(path: str) -> List[Entry]:
    with open(path, encoding="utf-8") as fh:
        return parse_entries(fh, source=path)


@dataclass
class ComparisonReport:
    missing_from_b: List[EntryKey] = field(default_factory=list)
    missing_from_a: List[EntryKey] = field(default_factory=list)
    duplicate_groups_a: List[List[Entry]] = field(default_factory=list)
    duplicate_groups_b: List[List[Entry]] = field(default_factory=list)
    # first entry seen for every key, for provenance in the report
    witnesses: Dict[EntryKey, Entry] = field(default_factory=dict)

    @property
    def identical(self) -> bool:
        return not (self.missing_from_a or self.missing_from_b)

    def swapped(self) -> "ComparisonReport":
        return ComparisonReport(
            self.missing_from_a, self.missing_from_b,
            self.duplicate_groups_b, self.duplicate_groups_a,
            self.witnesses,
        )

    def records(self) -> List[str]:
        """Tab-separated lines: role, n, canonical diagram, provenance."""
        out = []
        for role, keys in (("missing_from_b", self.missing_from_b), ("missing_from_a", self.missing_from_a)):
            for key in keys:
                w = self.witnesses[key]
                out.append(f"{role}\t{key[0]}\t{_key_text(key)}\t{w.where}")
        for role, groups in (("duplicate_a", self.duplicate_groups_a), ("duplicate_b", self.duplicate_groups_b)):
            for idx, group in enumerate(groups, start=1):
                for e in group:
                    out.append(f"{role}\t{idx}\t{_key_text(entry_key(e))}\t{e.where}")
        return out

    def render_text(self) -> str:
        lines = []
        lines.append(f"{len(self.missing_from_b)} present only in A, {len(self.missing_from_a)} present only in B")
        for title, keys in (("Only in A:", self.missing_from_b), ("Only in B:", self.missing_from_a)):
            if keys:
                lines.append(title)
                for key in keys:
                    w = self.witnesses[key]
                    lines.append(f"  {_key_text(key)}  ({w.where}: {w.text})")
        for title, groups in (("Duplicates in A:", self.duplicate_groups_a), ("Duplicates in B:", self.duplicate_groups_b)):
            if groups:
                lines.append(title)
                for group in groups:
                    lines.append("  " + " = ".join(f"{e.where} {e.text}" for e in group))
        return "\n".join(lines)


def _key_text(key: EntryKey) -> str:
    n, flat = key
    return format_diagram(diagram_from_key(n, flat))


def _group(entries: List[Entry]) -> Dict[EntryKey, List[Entry]]:
    groups: Dict[EntryKey, List[Entry]] = defaultdict(list)
    for e in entries:
        groups[entry_key(e)].append(e)
    return groups


def compare(a: List[Entry], b: List[Entry]) -> ComparisonReport:
    """Set differences and internal duplicates, by canonical key only."""
    groups_a, groups_b = _group(a), _group(b)
    witnesses: Dict[EntryKey, Entry] = {}
    for groups in (groups_a, groups_b):
        for key, members in groups.items():
            witnesses.setdefault(key, members[0])
    report = ComparisonReport(
        missing_from_b=sorted(set(groups_a) - set(groups_b)),
        missing_from_a=sorted(set(groups_b) - set(groups_a)),
        duplicate_groups_a=[groups_a[k] for k in sorted(groups_a) if len(groups_a[k]) > 1],
        duplicate_groups_b=[groups_b[k] for k in sorted(groups_b) if len(groups_b[k]) > 1],
        witnesses=witnesses,
    )
    logger.info(
        "compared %d and %d entries: %d only in A, %d only in B",
        len(a), len(b), len(report.missing_from_b), len(report.missing_from_a),
    )
    return report
