import pytest

from gishida.chains import FieldChoice
from gishida.cones import make_cone
from gishida.degspace import HiddenRegionsPresent
from gishida.duality import (all_subcomplexes, compare_at_degree, delta_name, ideal_name, link_cohomology,
                             pi_complex_cohomology, region_token, sample_degrees, table_generate, table_rows,
                             verify_duality)
from gishida.ishida import SupportComplex
from gishida.oracle import hochster_link_formula

from conftest import orthant

NON_NORMAL = [[[1, 1], [0, 2]], [[1, 1, 1], [0, 2, 3]], [[1, 0, 1], [0, 1, 1], [0, 0, 2]]]


def test_subcomplex_counts():
    assert [len(all_subcomplexes(orthant(d))) for d in (1, 2, 3)] == [2, 5, 19]


def test_names():
    cone = orthant(3)
    D = SupportComplex.from_columns(cone, [[0, 2], [1, 2]])
    assert delta_name(D) == "(xz,yz)" and ideal_name(D) == "⟨xy⟩"
    D = SupportComplex.from_columns(cone, [[0, 1], [2]])
    assert ideal_name(D) == "⟨xz,yz⟩"
    assert delta_name(SupportComplex.maximal(cone)) == "∅" and ideal_name(SupportComplex.maximal(cone)) == "m"
    assert delta_name(SupportComplex.zero(cone)) == "3-sim" and ideal_name(SupportComplex.zero(cone)) == "0"
    assert region_token(frozenset({0, 2})) == "r_{1,3}" and region_token(frozenset()) == "r_{}"


def test_sample_degrees_sign_cube():
    assert len(sample_degrees(orthant(3), 5)) == 27
    assert len(sample_degrees(make_cone([[1, 1], [0, 2]]), 2)) == 25


@pytest.mark.parametrize("d", [1, 2, 3])
def test_link_formula_matches_stanley_reisner_oracle(d):
    cone = orthant(d)
    for delta in all_subcomplexes(cone):
        if delta.full:
            continue
        facets = [f.columns for f in delta.facets]
        for F in delta.intersections():
            u = tuple(-1 if i in F.columns else 0 for i in range(d))
            assert link_cohomology(cone, delta, F) == hochster_link_formula(facets, u)


@pytest.mark.parametrize("p", [0, 2])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_alexander_bridge(d, p):
    # link side in degree i against punctured section side in degree d - i
    cone = orthant(d)
    f = FieldChoice(p)
    for delta in all_subcomplexes(cone):
        for F in delta.intersections():
            lk = link_cohomology(cone, delta, F, f)
            pi = pi_complex_cohomology(cone, delta, F, f)
            assert all(lk.get(i) == pi.get(d - i) for i in range(-1, d + 2))


@pytest.mark.parametrize("d", [1, 2, 3])
def test_verify_duality_on_orthants(d):
    cone = orthant(d)
    for delta in all_subcomplexes(cone):
        recs = verify_duality(cone, delta)
        assert len(recs) == len(cone.faces)
        assert all(r.status == "checked" and r.verdict for r in recs)


@pytest.mark.parametrize("A", NON_NORMAL)
def test_verify_duality_non_normal(A):
    cone = make_cone(A)
    for delta in all_subcomplexes(cone):
        recs = verify_duality(cone, delta)
        assert all(r.verdict for r in recs), [r.to_json() for r in recs if not r.verdict]
        for F in delta.intersections():
            rec = next(r for r in recs if r.face == F.columns)
            assert rec.status == "checked"
            assert rec.lhs == link_cohomology(cone, delta, F)
            assert rec.rhs == pi_complex_cohomology(cone, delta, F)


def test_segre_is_refused_and_per_degree_comparison_fails(segre_cone, segre_delta, segre_data):
    with pytest.raises(HiddenRegionsPresent):
        verify_duality(segre_cone, segre_delta, data=segre_data)
    with pytest.raises(HiddenRegionsPresent):
        pi_complex_cohomology(segre_cone, segre_delta, segre_cone.zero())
    u = segre_data.preimage((), (0, 1, 0))
    rec = compare_at_degree(segre_cone, segre_delta, u, data=segre_data)
    assert rec.lhs.is_zero() and rec.rhs.nonzero() == {1: 1}
    assert not rec.verdict
    assert rec.to_json()["face"] is None


def test_table_rendering():
    text = table_generate(1)
    assert text.splitlines()[0].startswith("1 | ∅ | m | (")
    rows = table_generate(2, fmt="json")
    assert len(rows) == 5 and set(rows[0]) == {"d", "delta", "J", "delta_facets", "lhs", "rhs"}
    with pytest.raises(ValueError):
        table_generate(4)


def test_table_characteristic_free():
    a = [r.to_json() for r in table_rows(3, field=FieldChoice(0))]
    b = [r.to_json() for r in table_rows(3, field=FieldChoice(2))]
    assert a == b
