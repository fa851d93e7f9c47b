import pytest

from core.compare import compare, entry_key, load_entries, parse_entries
from core.errors import Inconsistent, NotationError, NotPartition
from core.formats import format_diagram
from core.model import new_diagram
from core.symmetry import DihedralElement, canonical_form, transform_diagram

# Dodecagons on the double torus, with their chord-length multisets
M1 = new_diagram(12, [(0, 2), (3, 5), (6, 11), (7, 9), (1, 10), (4, 8)])  # 2,2,2,3,4,5
M2 = new_diagram(12, [(0, 2), (3, 7), (4, 8), (5, 11), (6, 9), (1, 10)])  # 2,3,3,4,4,6
M3 = new_diagram(12, [(0, 2), (1, 10), (3, 8), (4, 6), (5, 7), (9, 11)])  # 2,2,2,2,3,5


def _text(d):
    return format_diagram(d)


def test_entries_skip_comments_and_blanks():
    entries = parse_entries(["# list A", "", _text(M1), "(036,1(11)7(10)2,4985)"], source="a.txt")
    assert [e.line for e in entries] == [3, 4]
    assert entries[1].where == "a.txt:4"
    assert entry_key(entries[0]) == entry_key(entries[1])


def test_missing_and_extra():
    a = parse_entries([_text(M1), _text(M2)], source="a")
    b = parse_entries(["(036,1(11)7(10)2,4985)", _text(M3)], source="b")
    report = compare(a, b)
    assert report.missing_from_b == [(12, canonical_form(M2).key)]
    assert report.missing_from_a == [(12, canonical_form(M3).key)]
    assert not report.identical
    assert report.render_text().splitlines()[0] == "1 present only in A, 1 present only in B"


def test_relabelled_copies_are_duplicates():
    rotated = transform_diagram(M1, DihedralElement.rotation(12, 1))
    reflected = transform_diagram(M1, DihedralElement.reflection(12, 5))
    a = parse_entries([_text(M1), _text(rotated), _text(reflected), _text(M2)], source="a")
    b = parse_entries([_text(M2), _text(M1)], source="b")
    report = compare(a, b)
    assert report.identical
    assert len(report.duplicate_groups_a) == 1
    assert [e.line for e in report.duplicate_groups_a[0]] == [1, 2, 3]
    assert report.duplicate_groups_b == []


def test_swapped_report():
    a = parse_entries([_text(M1), _text(M2)], source="a")
    b = parse_entries([_text(M1)], source="b")
    report = compare(a, b)
    assert report.swapped().missing_from_a == report.missing_from_b


def test_records_are_tab_separated():
    a = parse_entries([_text(M1), _text(M1)], source="a")
    b = parse_entries([_text(M3)], source="b")
    records = compare(a, b).records()
    roles = [r.split("\t")[0] for r in records]
    assert roles == ["missing_from_b", "missing_from_a", "duplicate_a", "duplicate_a"]
    assert records[0].split("\t")[1] == "12"
    assert records[0].split("\t")[3] == "a:1"


def test_bad_line_reports_its_number():
    with pytest.raises(NotationError) as info:
        parse_entries([_text(M1), "n=12: 0-2 3-5"], source="list.txt")
    assert info.value.line == 2


def test_bad_vertex_list_reports_its_number():
    with pytest.raises(NotPartition) as info:
        parse_entries(["n=8: (0,1,2)(3,4,5)"], source="list.txt")
    assert "line 1" in str(info.value)


def test_orientation_failure_reports_its_number():
    with pytest.raises(Inconsistent) as info:
        parse_entries([_text(M1), "n=8: (0,2,4,6)(1,3,5,7)"], source="list.txt")
    assert "list.txt line 2" in str(info.value)
    assert info.value.line == 2


def test_load_entries(tmp_path):
    path = tmp_path / "list.txt"
    path.write_text(f"# audit\n{_text(M1)}\n", encoding="utf-8")
    entries = load_entries(str(path))
    assert entries[0].where == f"{path}:2"
