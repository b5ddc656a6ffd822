import pytest
from hypothesis import given, settings, strategies as st

from gishida.cones import (BadFunctional, NotPointed, all_regions, facet_normals, hidden_regions, make_cone,
                           region_of, section_intersection_is_face, transverse_section, vertex_figure)
from gishida.exactlin import identity

from conftest import LATTICE_A, SEGRE_A, SEGRE_ORDER, orthant


def test_orthant_facets_in_canonical_order():
    H = facet_normals(identity(3))
    assert [h.normal for h in H] == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    cone = orthant(3)
    assert len(cone.faces) == 8
    assert cone.zero().tight == frozenset({0, 1, 2}) and cone.top().tight == frozenset()
    assert cone.face_by_columns([0]).tight == frozenset({1, 2})


def test_lattice_example_cone(lattice_cone):
    assert [f.columns for f in lattice_cone.faces] == [(), (0, 2), (3,), (0, 1, 2, 3)]
    assert lattice_cone.m == 2 and lattice_cone.is_simplicial()
    assert not hidden_regions(lattice_cone.A, lattice_cone.hyperplanes, lattice_cone.faces)


def test_segre_cone_and_hidden_regions(segre_cone):
    cone = segre_cone
    assert cone.m == 4 and len(cone.faces) == 10
    for i, cols in enumerate(SEGRE_ORDER):
        assert cone.face_by_columns(cols).tight == frozenset({i})
    hidden = hidden_regions(cone.A, cone.hyperplanes, cone.faces)
    assert len(hidden) == 4
    assert region_of(cone.hyperplanes, (0, 1, 0)).label in {r.label for r in hidden}
    assert region_of(cone.hyperplanes, (0, 1, 0)).label == frozenset({0, 1, 3})
    assert cone.complement(cone.face_by_columns([0, 1])) is None


def test_facet_order_must_be_complete_and_valid():
    with pytest.raises(ValueError):
        make_cone(SEGRE_A, SEGRE_ORDER[:3])
    with pytest.raises(ValueError):
        make_cone(SEGRE_A, [[0, 2], [1, 2], [2, 3], [0, 3]])


def test_not_pointed():
    with pytest.raises(NotPointed):
        make_cone([[1, -1]])


def test_bad_functional():
    with pytest.raises(BadFunctional):
        transverse_section(orthant(2), w=(1, 0))


def test_regions_of_simplicial_cone_are_all_subsets():
    cone = orthant(3)
    assert len(all_regions(cone.hyperplanes, 3)) == 8


@given(st.lists(st.integers(-6, 6), min_size=3, max_size=3))
@settings(max_examples=80, deadline=None)
def test_region_of_point_in_cone_is_full(a):
    cone = make_cone(SEGRE_A, SEGRE_ORDER)
    label = region_of(cone.hyperplanes, a).label
    inside = all(h.value(a) >= 0 for h in cone.hyperplanes)
    assert (label == frozenset(range(4))) == inside


@given(st.lists(st.integers(-6, 6), min_size=2, max_size=2))
@settings(max_examples=60, deadline=None)
def test_every_region_is_a_face_without_hidden(a):
    cone = make_cone(LATTICE_A)
    assert cone.face_by_tight(region_of(cone.hyperplanes, a).label) is not None


def test_section_faces_match_cone_faces(segre_cone):
    P = transverse_section(segre_cone)
    assert len(P.faces) == len(segre_cone.faces) - 1
    assert len(P.vertices) == 4


def test_vertex_figure_of_square_is_an_interval(segre_cone):
    P = transverse_section(segre_cone)
    Q = vertex_figure(P, P.faces[0])
    assert sorted(len(f) for f in Q.faces) == [1, 1, 2]


def test_section_intersection_unique_top(segre_cone):
    from gishida.cones import barmap_of
    P = transverse_section(segre_cone)
    bar = [barmap_of(segre_cone, P, f) for f in P.faces]
    edge = segre_cone.face_by_columns([0, 1])
    top = section_intersection_is_face(segre_cone, P, bar, edge)
    assert bar[top] == edge
