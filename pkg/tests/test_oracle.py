import random
from itertools import combinations

from gishida.chains import FieldChoice
from gishida.exactlin import LatticeData, identity
from gishida.ishida import SupportComplex, graded_local_cohomology, ishida_for
from gishida.oracle import (cech_graded, closure, h0_expected, hochster_link_formula, naive_homology,
                            simplicial_chain_data, standard_monomials)

from conftest import orthant


def test_naive_homology_of_a_circle():
    faces = [(0,), (1,), (2,), (0, 1), (1, 2), (0, 2)]
    dims, bd = simplicial_chain_data(faces)
    assert naive_homology(dims, bd).nonzero() == {1: 1}


def test_closure_keeps_the_empty_face():
    assert closure([]) == {()}
    assert closure([(0, 1)]) == {(), (0,), (1,), (0, 1)}


def test_hochster_on_simplices():
    assert hochster_link_formula([(0, 1)], (-1, -1)).nonzero() == {2: 1}
    assert hochster_link_formula([(0, 1)], (-1, 0)).is_zero()
    assert hochster_link_formula([(0,), (1,)], (0, 0)).nonzero() == {1: 1}
    assert hochster_link_formula([], (0, 0)).nonzero() == {0: 1}


def test_cech_one_variable():
    assert cech_graded([], [[1]], (-1,)).nonzero() == {1: 1}
    assert cech_graded([], [[1]], (0,)).is_zero()


def test_cech_matches_ishida_on_lattice_example(lattice_data, lattice_cone):
    delta = SupportComplex.maximal(lattice_cone)
    ish = ishida_for(lattice_cone, delta)
    gens = [[1 if i in f.columns else 0 for i in range(4)] for f in delta.generator_faces()]
    rng = random.Random(5)
    for _ in range(15):
        t = rng.choice(lattice_data.torsion.elements())
        a = (rng.randint(-3, 3), rng.randint(-3, 3))
        u = lattice_data.preimage(t, a)
        assert graded_local_cohomology(ish, lattice_data, u) == cech_graded(lattice_data.lattice.basis, gens, u)


def test_h0_on_orthant_quotient():
    cone = orthant(2)
    data = LatticeData.from_matrix(identity(2))
    delta = SupportComplex.from_columns(cone, [[0]])
    ish = ishida_for(cone, delta)
    cols = [f.columns for f in delta.generator_faces()]
    for u in [(0, 0), (1, 0), (0, 1), (-1, 0)]:
        assert graded_local_cohomology(ish, data, u).get(0) == h0_expected(data, cols, u) == 0


def test_standard_monomials_one_per_degree(lattice_data):
    mons = standard_monomials(lattice_data, 2)
    keys = [(t, a) for _, t, a in mons]
    assert len(keys) == len(set(keys))
    for u, t, a in mons:
        assert lattice_data.degree(u) == (t, a)


def test_characteristic_is_passed_through():
    faces = [f for k in (1, 2) for f in combinations(range(3), k)]
    dims, bd = simplicial_chain_data(faces)
    assert naive_homology(dims, bd, FieldChoice(2)) == naive_homology(dims, bd, FieldChoice(0))
