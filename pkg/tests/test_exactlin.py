import random

from hypothesis import given, settings, strategies as st

from gishida.exactlin import (Inconclusive, Lattice, LatticeData, coset_feasible, det, grading_matrix,
                              hermite_normal_form, identity, matmul, matvec, saturate, smith_normal_form,
                              torsion_and_degree)

from conftest import LATTICE_A, LATTICE_GENS, SEGRE_A

small = st.integers(min_value=-5, max_value=5)
matrices = st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3)


def row_equivalent(A, B):
    return hermite_normal_form(A)[0] == hermite_normal_form(B)[0]


def test_hnf_identity_and_diagonal():
    assert hermite_normal_form(identity(3)) == (identity(3), identity(3))
    H, U = hermite_normal_form([[2, 0], [0, 3]])
    assert H == [[2, 0], [0, 3]] and U == identity(2)


@given(matrices)
@settings(max_examples=60, deadline=None)
def test_hnf_transform(M):
    H, U = hermite_normal_form(M)
    assert matmul(U, M) == H
    assert abs(det(U)) == 1


def test_snf_examples():
    sd = smith_normal_form([[0, 0], [0, 0]])
    assert sd.S == [[0, 0], [0, 0]] and sd.U == identity(2) and sd.V == identity(2)
    assert smith_normal_form([[2, 0], [0, 3]]).diagonal == [1, 6]
    sd = smith_normal_form([[2, 1], [0, -5], [-3, 1], [0, 5]])
    assert sd.diagonal == [1, 5]


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=2, max_size=4))
@settings(max_examples=60, deadline=None)
def test_snf_invariants(M):
    sd = smith_normal_form(M)
    assert matmul(matmul(sd.U, M), sd.V) == sd.S
    assert abs(det(sd.U)) == 1 and abs(det(sd.V)) == 1
    diag = [x for x in sd.diagonal if x]
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]))


def test_saturation_of_lattice_example():
    L = Lattice.from_generators(LATTICE_GENS, 4)
    sat, T = saturate(L)
    assert T.order == 5 and T.invariant_factors == (5,)
    assert len(T.representatives) == 5
    assert T.representatives[T.elements().index(T.identity())] == (0, 0, 0, 0)
    for g in LATTICE_GENS:
        assert sat.contains(g)


def test_printed_saturation_generators_span_the_saturation():
    # the four printed generators, compared as sublattices of Z^4
    sat, _ = saturate(Lattice.from_generators(LATTICE_GENS, 4))
    printed = [(1, -1, -1, 1), (0, -2, 1, 2), (-1, -1, 2, 2), (-2, 0, 3, 0)]
    assert Lattice.from_generators(printed, 4) == Lattice.from_generators(sat.basis, 4)


def test_printed_generator_outside_kernel():
    # pins why the previous test fails: one printed vector has nonzero degree
    assert matvec(LATTICE_A, (-1, -1, 2, 2)) == (0, 1)
    sat, _ = saturate(Lattice.from_generators(LATTICE_GENS, 4))
    for v in [(1, -1, -1, 1), (0, -2, 1, 2), (-2, 0, 3, 0)]:
        assert sat.contains(v)
    assert not sat.contains((-1, -1, 2, 2))


def test_saturation_trivial_cases():
    sat, T = saturate(Lattice(3, ()))
    assert sat.rank == 0 and T.order == 1
    sat, T = saturate(Lattice.from_generators([(2,)], 1))
    assert sat == Lattice(1, ((1,),)) and T.invariant_factors == (2,)


def test_grading_matrices():
    sat, _ = saturate(Lattice.from_generators(LATTICE_GENS, 4))
    assert row_equivalent(grading_matrix(sat, 4), LATTICE_A)
    assert grading_matrix(Lattice(2, ()), 2) == identity(2)
    segre_sat, _ = saturate(Lattice.from_generators([(1, -1, 1, -1)], 4))
    assert row_equivalent(grading_matrix(segre_sat, 4), SEGRE_A)


def test_grading_kills_saturation():
    sat, _ = saturate(Lattice.from_generators(LATTICE_GENS, 4))
    A = grading_matrix(sat, 4)
    for b in sat.basis:
        assert not any(matvec(A, b))
    assert len(A) + sat.rank == 4


def test_torsion_and_degree(lattice_data):
    L, T = lattice_data.lattice, lattice_data.torsion
    assert torsion_and_degree(L, T, LATTICE_A, (0, 0, 0, 0)) == ((0,), (0, 0))
    t, a = torsion_and_degree(L, T, LATTICE_A, (-1, 1, 1, -1))
    assert t != (0,) and a == (0, 0)


def test_printed_torsion_representatives_form_the_group(lattice_data):
    printed = [(0, 0, 0, 0), (-1, 1, 1, -1), (0, 2, -1, -2), (-1, 3, 0, -3), (0, 4, -2, -4)]
    classes = [lattice_data.degree(v)[0] for v in printed]
    assert sorted(classes) == sorted(lattice_data.torsion.elements())
    xi = classes[1]
    acc = lattice_data.torsion.identity()
    for k in range(5):
        assert classes[k] == acc
        acc = lattice_data.torsion.add(acc, xi)


@given(st.lists(st.integers(-6, 6), min_size=4, max_size=4), st.integers(-3, 3), st.integers(-3, 3))
@settings(max_examples=60, deadline=None)
def test_degree_constant_on_cosets_and_additive(u, p, q):
    data = LatticeData.from_generators(LATTICE_GENS, 4, A=LATTICE_A)
    ell = [p * a + q * b for a, b in zip(*LATTICE_GENS)]
    v = [x + y for x, y in zip(u, ell)]
    assert data.degree(u) == data.degree(v)
    w = [1, 0, 2, -1]
    t1, a1 = data.degree(u)
    t2, a2 = data.degree(w)
    t3, a3 = data.degree([x + y for x, y in zip(u, w)])
    assert t3 == data.torsion.add(t1, t2) and a3 == tuple(x + y for x, y in zip(a1, a2))


def test_coset_feasible_segre(segre_data):
    L = segre_data.lattice
    u = segre_data.preimage((), (0, 1, 0))
    assert coset_feasible(L, (0, 0, 0, 0), ())
    assert coset_feasible(L, u, (0,))
    assert not coset_feasible(L, u, ())
    # brute force over the rank one kernel agrees
    b = L.basis[0]
    assert not any(all(x + s * y >= 0 for x, y in zip(u, b)) for s in range(-10, 11))


@given(st.lists(st.integers(-4, 4), min_size=4, max_size=4), st.sets(st.integers(0, 3)))
@settings(max_examples=80, deadline=None)
def test_coset_feasible_invariance_and_monotonicity(u, free):
    L = Lattice.from_generators(LATTICE_GENS, 4)
    base = coset_feasible(L, u, free)
    shifted = [x + 2 * a - b for x, a, b in zip(u, *LATTICE_GENS)]
    assert coset_feasible(L, shifted, free) == base
    if base:
        for extra in range(4):
            assert coset_feasible(L, u, free | {extra})


def test_coset_feasible_matches_brute_force():
    rng = random.Random(3)
    L = Lattice.from_generators(LATTICE_GENS, 4)
    for _ in range(40):
        u = [rng.randint(-3, 3) for _ in range(4)]
        free = {i for i in range(4) if rng.random() < 0.3}
        brute = any(all(u[i] + p * LATTICE_GENS[0][i] + q * LATTICE_GENS[1][i] >= 0
                        for i in range(4) if i not in free)
                    for p in range(-12, 13) for q in range(-12, 13))
        assert coset_feasible(L, u, free) == brute


def test_inconclusive_is_an_exception():
    assert issubclass(Inconclusive, Exception)
