import pytest
from hypothesis import given, strategies as st

from ciauto import torelli as T
from ciauto.combinat import CIType
from ciauto.poly import PrimeField

S = T.CohomologySpot


def test_bott_examples():
    assert not T.bott_vanishes(S(3, 1, 1, 0))
    assert not T.bott_vanishes(S(3, 1, 0, 2))
    assert T.bott_vanishes(S(3, 1, 2, 5))
    assert T.bott_case(S(3, 3, 3, -1)) == "b=r,l<a-r"


def test_serre_duality_exhaustive():
    for r in range(1, 7):
        for a in range(r + 1):
            for b in range(r + 1):
                for l in range(-12, 13):
                    s = S(r, a, b, l)
                    assert T.bott_vanishes(s) == T.bott_vanishes(s.serre_dual())


@given(st.integers(1, 20), st.data())
def test_serre_duality_random(r, data):
    s = S(r, data.draw(st.integers(0, r)), data.draw(st.integers(0, r)), data.draw(st.integers(-40, 40)))
    assert T.bott_vanishes(s) == T.bott_vanishes(s.serre_dual())


def test_restricted_vanishing_examples():
    res = T.restricted_vanishing_certified(3, (2,), 1, 1, 0)
    assert res.status == "unknown" and res.blockers[0].case == "b=a,l=0"
    res = T.restricted_vanishing_certified(5, (2, 3), 2, 3, -1)
    assert res.status == "unknown" and len(res.trace) == 4
    assert T.restricted_vanishing_certified(4, (5,), 2, 1, -3).certified


def test_condition_ii_examples():
    # (ii) alone certifies quadric hypersurfaces; the quadric exception comes from (i)
    assert T.condition_ii(T.FlennerCase(CIType(3, (2,)))).certified
    assert T.condition_ii(T.FlennerCase(CIType(4, (5,)))).certified
    assert T.condition_ii(T.FlennerCase(CIType(4, (2, 3)))).status == "unknown"
    assert T.condition_ii(T.FlennerCase(CIType(6, (2, 3)))).status == "unknown"


def test_condition_ii_does_not_depend_on_p():
    ci = CIType(6, (3, 3))
    base = [(t.j, t.e, t.twist, t.result.certified) for t in T.condition_ii(T.FlennerCase(ci, 1)).terms]
    for p in range(2, 5):
        assert [(t.j, t.e, t.twist, t.result.certified) for t in T.condition_ii(T.FlennerCase(ci, p)).terms] == base


def test_flenner_case_fields():
    case = T.FlennerCase(CIType(6, (2, 3)), 2)
    assert (case.ambient, case.dim_x, case.kappa) == (6, 4, -2)
    with pytest.raises(ValueError):
        T.FlennerCase(CIType(4, (3,)), 4)


def test_condition_i_examples():
    f = PrimeField(101)
    assert T.condition_i(T.FlennerCase(CIType(4, (5,)), 2), f).status == "surjective"
    assert T.condition_i(T.FlennerCase(CIType(4, (2,)), 2), f).status == "degenerate"
    cubic = T.condition_i(T.FlennerCase(CIType(3, (3,)), 1), f)
    assert cubic.status == "not-surjective"
    assert T.range_caveat(CIType(3, (3,))) is not None


@pytest.mark.parametrize("ci", [CIType(4, (3,)), CIType(5, (2, 3)), CIType(5, (4,)), CIType(6, (2, 2, 3)), CIType(4, (2, 2))])
def test_matrix_and_shadow_agree(ci):
    for p in range(1, ci.dim + 1):
        case = T.FlennerCase(ci, p)
        m = T.condition_i(case, PrimeField(101), budget=3000)
        s = T.condition_i_shadow(case, 101)
        assert m.route == "matrix" and s.route == "shadow"
        assert m.status == s.status
        assert [pc.image_dim for pc in m.pieces] == [pc.image_dim for pc in s.pieces]


def test_budget_falls_back_to_shadow():
    rep = T.condition_i(T.FlennerCase(CIType(4, (5,)), 2), budget=10)
    assert rep.route == "shadow" and "budget" in rep.note


def test_exception_list():
    assert T.known_exception(CIType(4, (2,))) == "quadric"
    assert T.known_exception(CIType(5, (3,))) == "cubic fourfold"
    assert T.known_exception(CIType(3, (4,))) == "quartic K3"
    assert T.known_exception(CIType(6, (2, 3))) == "even-dimensional (2,3)"
    assert T.known_exception(CIType(5, (2, 3))) is None
    assert T.known_exception(CIType(4, (5,))) is None


def test_sweep_up_to_p5():
    s = T.torelli_sweep(5)
    flagged = {str(ci) for ci in s.flagged()}
    assert {"(3,2)", "(4,2)", "(5,2)", "(4,2,2)", "(5,2,2)", "(3,4)", "(5,3)", "(3,3)"} <= flagged
    assert not s.missed_exceptions() and not s.uncertified_outside_list()
    assert [str(ci) for ci in s.extra_flags()] == ["(3,3)"]
    assert s.records[CIType(4, (5,))].status == "certified"
    compared, bad = T.monotonicity_violations(s)
    assert compared > 0 and not bad


def test_sweep_bound():
    with pytest.raises(ValueError, match="bound"):
        T.torelli_sweep(11)
