from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from gishida.chains import (CohomologyProfile, FieldChoice, NotProper, euler_characteristic, matrix_rank,
                            poset_cohomology, reduced_cohomology, signed_complex_of, unmoved_alexander_dual)
from gishida.cones import transverse_section

from conftest import orthant


def boundary_poset(k):
    return [frozenset(s) for r in range(1, k) for s in combinations(range(k), r)]


def test_field_choice_validation():
    for bad in (1, 4, -3, 9):
        with pytest.raises(ValueError):
            FieldChoice(bad)
    assert FieldChoice(7).characteristic == 7


def test_rank_depends_on_characteristic():
    M = [[1, 1], [1, -1]]
    assert matrix_rank(M, 2, 0) == 2 and matrix_rank(M, 2, 2) == 1
    assert matrix_rank([], 3) == 0


def test_profile_equality_ignores_zeros():
    assert CohomologyProfile({1: 0, 2: 3}) == CohomologyProfile({2: 3})
    assert CohomologyProfile({2: 1}).shifted(-1).nonzero() == {1: 1}


@pytest.mark.parametrize("k", [2, 3, 4])
def test_boundary_of_simplex_is_a_sphere(k):
    h = poset_cohomology(boundary_poset(k), lambda a, b: a <= b)
    assert h.nonzero() == {k - 2: 1}


def test_empty_poset_has_reduced_cohomology_in_degree_minus_one():
    assert poset_cohomology([], lambda a, b: True).nonzero() == {-1: 1}


@pytest.mark.parametrize("d", [1, 2, 3])
def test_polytope_is_acyclic_and_signs_square_to_zero(d):
    P = transverse_section(orthant(d))
    C = signed_complex_of(P)
    assert C.check_dd()
    assert reduced_cohomology(C).is_zero()
    assert euler_characteristic(C) == 0


def test_alexander_dual_of_boundary_and_of_vertex():
    P = transverse_section(orthant(3))
    proper = [f for f in P.faces if len(f) < 3]
    # only the 2-cell of the triangle survives
    assert reduced_cohomology(unmoved_alexander_dual(P, proper)).nonzero() == {2: 1}
    assert reduced_cohomology(unmoved_alexander_dual(P, [P.faces[0]])).is_zero()
    with pytest.raises(NotProper):
        unmoved_alexander_dual(P, [f for f in P.faces if len(f) == 2])


@given(st.sampled_from([0, 2, 3]), st.integers(1, 3))
@settings(max_examples=20, deadline=None)
def test_square_cohomology_is_characteristic_free(p, d):
    P = transverse_section(orthant(d))
    assert reduced_cohomology(signed_complex_of(P), FieldChoice(p)).is_zero()


def test_alexander_dual_of_two_opposite_square_edges(segre_cone):
    P = transverse_section(segre_cone)
    edges = [f for f in P.faces if len(f) == 2]
    a = edges[0]
    b = next(e for e in edges if not e & a)
    sub = [a, b] + [frozenset({v}) for v in a | b]
    # two disjoint segments: reduced H^0 is one dimensional
    lhs = reduced_cohomology(signed_complex_of(P, restrict=[frozenset()] + sub))
    assert lhs.nonzero() == {0: 1}
    assert reduced_cohomology(unmoved_alexander_dual(P, sub)).nonzero() == {1: 1}


def test_alexander_dual_of_nothing_is_the_polytope():
    P = transverse_section(orthant(2))
    assert unmoved_alexander_dual(P, []).active == signed_complex_of(P).active
