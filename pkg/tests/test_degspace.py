from itertools import product

import pytest

from gishida.degspace import (HiddenRegionsPresent, MonomialIdealInQ, OpenSetLabel, classify_degree,
                              degree_pairs, fingerprints, in_semigroup, minimal_open_sets, overlap_classes,
                              toric_data, torsion_ideal)
from gishida.exactlin import LatticeData, identity
from gishida.ishida import SupportComplex, graded_local_cohomology, ishida_for

from conftest import orthant


@pytest.fixture(scope="module")
def plane():
    cone = orthant(2)
    return cone, toric_data(LatticeData.from_matrix(identity(2)))


def pairs_of(plane, gens):
    cone, toric = plane
    return [(p.base, p.face.columns) for p in degree_pairs(MonomialIdealInQ(toric, cone, gens), box=4)]


def test_degree_pairs_of_monomial_ideals(plane):
    # k[x,y]/<x> is k[y]: one standard pair along the y-axis
    assert pairs_of(plane, [(1, 0)]) == [((0, 0), (1,))]
    # k[x,y]/<xy> is the union of both axes
    assert pairs_of(plane, [(1, 1)]) == [((0, 0), (0,)), ((0, 0), (1,))]
    # <x^2, y> leaves the two points 1 and x
    assert pairs_of(plane, [(2, 0), (0, 1)]) == [((0, 0), ()), ((1, 0), ())]


def test_overlap_classes_merge_by_face_lattice(plane):
    cone, toric = plane
    pairs = degree_pairs(MonomialIdealInQ(toric, cone, [(2, 0), (0, 1)]), box=4)
    classes = overlap_classes(pairs, cone.A)
    assert sorted(c.members for c in classes) == [[(0, 0)], [(1, 0)]]


def test_torsion_ideals_of_the_lattice_example(lattice_data, lattice_cone):
    toric = toric_data(lattice_data)
    seen = set()
    for t in lattice_data.torsion.elements():
        I = torsion_ideal(lattice_data, lattice_cone, t, box=8)
        assert len(I.generators) == 1
        g = I.generators[0]
        seen.add(g)
        assert in_semigroup(toric, lattice_cone, g)
        if t == lattice_data.torsion.identity():
            assert g == (0, 0)
    assert len(seen) == 5


def test_minimal_open_sets_require_no_hidden_regions(segre_cone, segre_delta, lattice_cone):
    with pytest.raises(HiddenRegionsPresent):
        minimal_open_sets(segre_cone, segre_delta)
    labels = minimal_open_sets(lattice_cone, SupportComplex.maximal(lattice_cone))
    pairs = [l.pair for l in labels if l.pair is not None]
    assert pairs == [((), ())]


def test_segre_fingerprint(segre_cone, segre_data):
    u = segre_data.preimage((), (0, 1, 0))
    plain, quot = fingerprints(segre_data, segre_cone, SupportComplex.zero(segre_cone), u)
    assert [list(f) for f in plain] == [[0], [1], [0, 1], [0, 3], [1, 2], [0, 1, 2, 3]]
    label = classify_degree(segre_data, segre_cone, SupportComplex.zero(segre_cone), u)
    assert label.pair is None and label.key()[0] == "fingerprint"


def test_open_set_label_keys():
    a = OpenSetLabel(frozenset({0}), (), ((0,), (0,)))
    b = OpenSetLabel(frozenset({0}))
    assert a.key()[0] == "pair" and b.key() == ("region", (), (0,))
    assert "F=[0]" in a.describe()


@pytest.mark.parametrize("facets", [[[0, 1]], [[0], [1]], [[0, 1], [1, 2]], [[0, 1], [2]]])
def test_cohomology_constant_on_open_sets(facets):
    d = 3
    cone = orthant(d)
    data = LatticeData.from_matrix(identity(d))
    delta = SupportComplex.from_columns(cone, facets)
    for ish in (ishida_for(cone, delta), ishida_for(cone, SupportComplex.maximal(cone), quotient=delta)):
        seen = {}
        for u in product(range(-2, 3), repeat=d):
            key = classify_degree(data, cone, delta, u).key()
            h = graded_local_cohomology(ish, data, u)
            assert seen.setdefault(key, h) == h


def test_lattice_example_cohomology_constant_on_labels(lattice_data, lattice_cone):
    ish = ishida_for(lattice_cone, SupportComplex.maximal(lattice_cone))
    delta = SupportComplex.zero(lattice_cone)
    seen = {}
    for t in lattice_data.torsion.elements():
        for a in product(range(-3, 4), repeat=2):
            u = lattice_data.preimage(t, a)
            lab = classify_degree(lattice_data, lattice_cone, delta, u)
            key = (lab.key(), fingerprints(lattice_data, lattice_cone, delta, u))
            h = graded_local_cohomology(ish, lattice_data, u)
            assert seen.setdefault(key, h) == h
