import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from core.errors import Inconsistent, NotPartition
from core.formats import format_vertex_set
from core.model import DecoratedCorner, Sign, VertexSet, new_diagram
from core.trace import (
    classify,
    diagram_of,
    orient_cycles,
    oriented,
    successor,
    trace_cycle,
    validate_vertex_set,
    vertices_of,
)
from tests.strategies import diagrams

PLUS, MINUS = Sign.PLUS, Sign.MINUS


def test_successor_rule(twisted_decagon):
    assert successor(twisted_decagon, DecoratedCorner(0, PLUS)) == DecoratedCorner(1, MINUS)
    assert successor(twisted_decagon, DecoratedCorner(1, MINUS)) == DecoratedCorner(2, PLUS)
    assert successor(twisted_decagon, DecoratedCorner(2, PLUS)) == DecoratedCorner(6, PLUS)


def test_trace_cycle_of_the_double_torus_decagon(decagon):
    cycle = trace_cycle(decagon, DecoratedCorner(0, PLUS))
    assert [c.corner for c in cycle] == [0, 3, 8, 6]


def test_vertices_of_orientable(decagon):
    vs = vertices_of(decagon)
    assert [v.corners for v in vs] == [(0, 3, 8, 6), (1, 5, 9, 7, 4, 2)]
    assert format_vertex_set(vs) == "n=10: (0,3,8,6)(1,5,9,7,4,2)"


def test_vertices_of_twisted(twisted_decagon):
    vs = vertices_of(twisted_decagon)
    assert format_vertex_set(vs) == "n=10: (0,1-,2,6)(3,8-,5)(4,7-,9-)"
    assert vs.degrees == (3, 3, 4)
    assert vs.is_decorated


def test_single_vertex_octagon(diameters):
    vs = vertices_of(diameters)
    assert len(vs) == 1
    assert vs.vertices[0].corners == (0, 5, 2, 7, 4, 1, 6, 3)


def test_twisted_octagon():
    d = new_diagram(8, [(0, 1, "-"), (2, 4, "+"), (3, 6, "+"), (5, 7, "+")])
    vs = vertices_of(d)
    assert vs == VertexSet.build(8, [[(0, "+"), (1, "-"), (2, "+"), (5, "+")], [3, 7, 6, 4]])
    assert classify(d).surface_name == "3P2"


def test_diagram_of_raw_cycles(decagon):
    assert diagram_of([[0, 3, 8, 6], [1, 5, 9, 7, 4, 2]], n=10) == decagon


def test_diagram_of_decorated(twisted_decagon):
    vs = VertexSet.build(
        10,
        [[(0, "+"), (1, "-"), (2, "+"), (6, "+")], [(3, "+"), (8, "-"), (5, "+")], [(4, "+"), (7, "-"), (9, "-")]],
    )
    assert diagram_of(vs) == twisted_decagon


def test_diagram_of_needs_n_for_raw_cycles():
    with pytest.raises(NotPartition):
        diagram_of([[0, 1, 2]])


def test_diagram_of_rejects_conflicting_partners():
    with pytest.raises(Inconsistent):
        diagram_of([[0, 2, 4, 6], [1, 3, 5, 7]], n=8)


def test_validate_accepts_a_vertex_set(decagon):
    report = validate_vertex_set(vertices_of(decagon))
    assert report.ok
    assert report.condition is None


def test_validate_reports_partition_first():
    report = validate_vertex_set([[0, 1, 2], [3, 4, 5]], n=8)
    assert not report.ok
    assert report.condition == "partition"


def test_validate_reports_adjacent_corners():
    report = validate_vertex_set([[0, 1, 2, 3], [4, 5, 6, 7]], n=8)
    assert report.condition == "adjacent"
    assert {c for c, _ in report.violations} >= {"adjacent"}
    assert report.message == "corners 0,1 are adjacent in the polygon"


def test_violation_messages_separate_two_digit_corners():
    report = validate_vertex_set([[0, 11, 1], [2, 3, 4, 5, 6, 7, 8, 9, 10]], n=12)
    messages = [m for _, m in report.violations]
    assert "corners 2,3 are adjacent in the polygon" in messages
    assert any(m.startswith("0,11 needs ") for m in messages)


def test_validate_reports_low_degree():
    report = validate_vertex_set([[0, 3], [1, 5, 9, 7, 4, 2], [8, 6]], n=10)
    assert report.condition == "degree"


def test_validate_reversed_cycle_fails_closure():
    report = validate_vertex_set([[0, 6, 8, 3], [1, 5, 9, 7, 4, 2]], n=10)
    assert not report.ok
    assert "closure" in {c for c, _ in report.violations}


def test_orient_cycles_repairs_reversed_vertices(decagon):
    vs = orient_cycles(10, [[0, 6, 8, 3], [2, 4, 7, 9, 5, 1]])
    assert diagram_of(vs) == decagon


def test_orient_cycles_gives_up():
    with pytest.raises(Inconsistent):
        orient_cycles(8, [[0, 1, 2, 3], [4, 5, 6, 7]])


def test_oriented_keeps_valid_sets(decagon):
    vs = vertices_of(decagon)
    assert oriented(vs) is vs


def test_classify_double_torus(decagon):
    s = classify(decagon)
    assert (s.surface_name, s.chi, s.v, s.e, s.orientable) == ("2T2", -2, 2, 5, True)
    assert s.degree_multiset == (4, 6)
    assert not s.degree_too_small


def test_classify_twisted(twisted_decagon):
    s = classify(twisted_decagon)
    assert (s.surface_name, s.chi, s.v) == ("3P2", -1, 3)
    assert s.degree_multiset == (3, 3, 4)


def test_classify_all_degree_three_eighteen_gon():
    d = new_diagram(18, [(0, 4), (5, 11), (12, 17), (1, 7), (3, 8), (6, 15), (10, 16), (9, 13), (2, 14)])
    s = classify(d)
    assert s.surface_name == "2T2"
    assert s.degree_multiset == (3,) * 6


def test_classify_flags_small_degree():
    d = new_diagram(8, [(0, 1), (2, 5), (3, 6), (4, 7)])
    assert classify(d).degree_too_small


@settings(max_examples=80, deadline=None)
@given(diagrams())
def test_round_trip_through_vertices(d):
    assert diagram_of(vertices_of(d)) == d


@settings(max_examples=80, deadline=None)
@given(diagrams(sizes=(8, 10, 12, 14, 16)), st.data())
def test_minus_trace_is_the_mirror_of_the_plus_trace(d, data):
    i = data.draw(st.integers(0, d.n - 1))
    plus = trace_cycle(d, DecoratedCorner(i, PLUS))
    minus = trace_cycle(d, DecoratedCorner(i, MINUS))
    mirror = [c.flipped() for c in reversed(plus)]
    start = mirror.index(DecoratedCorner(i, MINUS))
    assert minus == mirror[start:] + mirror[:start]


@settings(max_examples=80, deadline=None)
@given(diagrams())
def test_degrees_add_up(d):
    s = classify(d)
    assert sum(s.degree_multiset) == d.n
    assert s.chi == s.v - s.e + 1


@settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(diagrams())
def test_traced_sets_validate_when_degrees_allow(d):
    vs = vertices_of(d)
    assume(min(vs.degrees) >= 3)
    assert validate_vertex_set(vs).ok


def _all_diagrams(n, signs):
    from core.enumerate import signed_matchings

    for pairs in signed_matchings(n, signs):
        yield new_diagram(n, [(a, b, "-" if s else "+") for a, b, s in pairs])


def test_round_trip_every_octagon():
    for d in _all_diagrams(8, (0, 1)):
        assert diagram_of(vertices_of(d)) == d


@pytest.mark.slow
def test_round_trip_every_decagon():
    for d in _all_diagrams(10, (0, 1)):
        assert diagram_of(vertices_of(d)) == d
