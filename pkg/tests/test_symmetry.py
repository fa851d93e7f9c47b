import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.errors import SizeMismatch
from core.model import VertexSet, new_diagram
from core.symmetry import (
    DihedralElement,
    canonical_form,
    chord_lengths,
    diagram_from_key,
    elements,
    encode,
    equivalent,
    is_canonical,
    transform_diagram,
    transform_vertex_set,
)
from core.trace import vertices_of
from tests.strategies import diagrams


def test_elements_start_with_identity():
    group = list(elements(6))
    assert len(group) == 12
    assert group[0].is_identity
    assert len(set(group)) == 12


def test_edge_action():
    r = DihedralElement.rotation(10, 3)
    s = DihedralElement.reflection(10, 3)
    assert r.edge(9) == 2
    assert s.edge(0) == 2
    assert s.corner(0) == 3
    assert str(s) == "reflection(3)"


def test_rotation_of_twisted_decagon(twisted_decagon):
    image = transform_diagram(twisted_decagon, DihedralElement.rotation(10, 3))
    assert image == new_diagram(10, [(0, 7, "-"), (1, 6, "-"), (2, 9, "+"), (3, 4, "-"), (5, 8, "+")])


def test_reflection_of_twisted_decagon(twisted_decagon):
    image = transform_diagram(twisted_decagon, DihedralElement.reflection(10, 4))
    assert image == new_diagram(10, [(0, 5, "-"), (1, 8, "+"), (2, 3, "-"), (4, 7, "+"), (6, 9, "-")])


def test_reflection_of_orientable_decagon(decagon):
    image = transform_diagram(decagon, DihedralElement.reflection(10, 3))
    assert image == new_diagram(10, [(0, 2), (1, 8), (3, 6), (4, 7), (5, 9)])
    assert [v.corners for v in vertices_of(image)] == [(0, 3, 7, 5), (1, 9, 6, 4, 8, 2)]


def test_reflection_reverses_vertex_order(decagon):
    vs = transform_vertex_set(vertices_of(decagon), DihedralElement.reflection(10, 3))
    assert [v.corners for v in vs] == [(0, 3, 7, 5), (1, 9, 6, 4, 8, 2)]


def test_reflection_keeps_decorations(twisted_decagon):
    g = DihedralElement.reflection(10, 3)
    expected = VertexSet.build(
        10,
        [[(0, "+"), (8, "+"), (5, "-")], [(1, "+"), (2, "-"), (3, "+"), (7, "+")], [(4, "+"), (9, "-"), (6, "+")]],
    )
    assert transform_vertex_set(vertices_of(twisted_decagon), g) == expected
    assert vertices_of(transform_diagram(twisted_decagon, g)) == expected


def test_size_mismatch(decagon):
    with pytest.raises(SizeMismatch):
        transform_diagram(decagon, DihedralElement.rotation(8, 1))
    with pytest.raises(SizeMismatch):
        equivalent(decagon, new_diagram(8, [(0, 4), (1, 5), (2, 6), (3, 7)]))


def test_full_stabilizer(diameters):
    form = canonical_form(diameters)
    assert form.stabilizer_order == 16
    assert form.orbit_size == 1
    assert form.representative == diameters


def test_canonical_representative_is_least():
    d = new_diagram(8, [(0, 6), (1, 3), (2, 4), (5, 7)])
    assert not is_canonical(d)
    form = canonical_form(d)
    assert is_canonical(form.representative)
    assert form.key < encode(d)
    assert diagram_from_key(8, form.key) == form.representative


def test_encode_layout(diameters):
    assert encode(diameters) == (4, 0, 5, 0, 6, 0, 7, 0, 0, 0, 1, 0, 2, 0, 3, 0)


def test_equivalent_accepts_vertex_sets(decagon):
    reflected = transform_diagram(decagon, DihedralElement.reflection(10, 3))
    assert equivalent(vertices_of(decagon), reflected)


def test_distinct_dodecagons_are_not_merged():
    a = new_diagram(12, [(0, 2), (1, 5), (3, 7), (4, 10), (6, 9), (8, 11)])
    b = new_diagram(12, [(0, 2), (1, 9), (3, 7), (4, 10), (5, 8), (6, 11)])
    assert not equivalent(a, b)


def test_distinct_fourteen_gons_are_not_merged():
    lists = [
        [(0, 3), (4, 8), (6, 9), (7, 13), (1, 10), (2, 11), (5, 12)],
        [(0, 3), (4, 8), (5, 9), (6, 13), (1, 11), (2, 12), (7, 10)],
        [(0, 3), (4, 10), (5, 11), (6, 13), (1, 7), (2, 8), (9, 12)],
    ]
    ds = [new_diagram(14, pairs) for pairs in lists]
    for i in range(3):
        for j in range(i + 1, 3):
            assert not equivalent(ds[i], ds[j])


def test_chord_lengths():
    d = new_diagram(12, [(0, 2), (3, 5), (6, 11), (7, 9), (1, 10), (4, 8)])
    assert chord_lengths(d) == (2, 2, 2, 3, 4, 5)


def _element(n, data):
    kind = data.draw(st.sampled_from(["rotation", "reflection"]))
    c = data.draw(st.integers(0, n - 1))
    return getattr(DihedralElement, kind)(n, c)


@settings(max_examples=80, deadline=None)
@given(diagrams(), st.data())
def test_canonical_key_is_orbit_invariant(d, data):
    g = _element(d.n, data)
    image = transform_diagram(d, g)
    assert canonical_form(image).key == canonical_form(d).key
    assert chord_lengths(image) == chord_lengths(d)


@settings(max_examples=80, deadline=None)
@given(diagrams(), st.data())
def test_vertices_commute_with_relabelling(d, data):
    g = _element(d.n, data)
    assert transform_vertex_set(vertices_of(d), g) == vertices_of(transform_diagram(d, g))


@settings(max_examples=60, deadline=None)
@given(diagrams(), st.data())
def test_compose_matches_successive_actions(d, data):
    g, h = _element(d.n, data), _element(d.n, data)
    assert transform_diagram(transform_diagram(d, h), g) == transform_diagram(d, g.compose(h))
    assert g.compose(g.inverse()).is_identity


@settings(max_examples=60, deadline=None)
@given(diagrams())
def test_orbit_stabilizer(d):
    form = canonical_form(d)
    assert form.stabilizer_order * form.orbit_size == 2 * d.n
    assert is_canonical(form.representative)


def test_compact_lists_of_the_same_tiling():
    from core.formats import parse_compact_vertex_set

    assert equivalent(parse_compact_vertex_set("(0386,159742)"), parse_compact_vertex_set("(0375,196482)"))
