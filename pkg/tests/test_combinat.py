from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from ciauto.combinat import (
    CIType, binom, degree_pattern, dim_forms, elementary_inequalities, h0_restricted,
    hilbert_function, lemma24_bound,
)


@pytest.mark.parametrize("a,b,want", [(7, 3, 35), (4, 0, 1), (3, 5, 0), (-2, 1, 0), (5, -1, 0)])
def test_binom_values(a, b, want):
    assert binom(a, b) == want


@given(st.integers(-64, 64), st.integers(-64, 64))
def test_pascal(a, b):
    if a >= 1:
        assert binom(a, b) == binom(a - 1, b) + binom(a - 1, b - 1)


@pytest.mark.parametrize("n,d,want", [(3, 3, 20), (4, 2, 15), (0, 7, 1)])
def test_dim_forms_values(n, d, want):
    assert dim_forms(n, d) == want


def test_dim_forms_brute_force():
    for n in range(0, 5):
        for d in range(0, 11):
            count = sum(1 for e in product(range(d + 1), repeat=n + 1) if sum(e) == d)
            assert dim_forms(n, d) == count


def test_dim_forms_rejects_negative():
    with pytest.raises(ValueError):
        dim_forms(-1, 2)


def test_citype_sorts_and_validates():
    ci = CIType(6, (3, 2))
    assert ci.degrees == (2, 3) and ci.key() == (6, 2, 3) and str(ci) == "(6,2,3)"
    assert CIType.from_key((6, 2, 3)) == ci
    with pytest.raises(ValueError):
        CIType(2, (2, 2))
    with pytest.raises(ValueError):
        CIType(4, (1, 3))


@pytest.mark.parametrize(
    "degs,pattern",
    [((3, 3), "equal-degrees"), ((2, 2, 3), "two-quadrics"), ((2, 3, 3), "one-quadric"), ((2, 3, 4), "other"),
     ((2, 2), "equal-degrees"), ((3, 4), "other")],
)
def test_degree_pattern(degs, pattern):
    assert degree_pattern(CIType(7, degs)) == pattern


def test_h0_restricted_values():
    assert h0_restricted(CIType(4, (2, 2)), 2) == 13
    assert h0_restricted(CIType(5, (3, 3)), 3) == 54
    # h^0(O_P(3)) minus (quadric * linear forms) minus the cubic: 84 - 7 - 1
    assert h0_restricted(CIType(6, (2, 3)), 3) == 76
    with pytest.raises(ValueError):
        h0_restricted(CIType(6, (2, 3, 4)), 3)
    with pytest.raises(ValueError):
        h0_restricted(CIType(6, (3, 3)), 2)


def test_hilbert_function_matches_closed_forms():
    for ci in (CIType(6, (2, 3)), CIType(7, (2, 2, 3)), CIType(5, (3, 3)), CIType(8, (2, 4, 4))):
        for d in set(ci.degrees):
            assert hilbert_function(ci.n, ci.degrees, d) == h0_restricted(ci, d)


def _ineq(n, d, ident):
    return next(i for i in elementary_inequalities(n, d) if i.ident == ident)


def test_elementary_inequalities_worked_values():
    e126 = _ineq(4, 3, "E126")
    assert (e126.lhs, e126.rhs, e126.holds) == (Fraction(130, 9), 12, True)
    e116 = _ineq(4, 3, "E116")
    assert (e116.lhs, e116.rhs, e116.holds) == (Fraction(43, 4), 10, True)
    assert _ineq(3, 2, "E126").holds is False


@pytest.mark.parametrize(
    "n,d,ident,lhs,rhs",
    [(4, 4, "E116", Fraction(95, 4), 30), (5, 4, "E116", Fraction(157, 4), 42), (4, 5, "E126", Fraction(560, 9), 72)],
)
def test_elementary_inequalities_fail_at_small_n(n, d, ident, lhs, rhs):
    # d >= 3, n >= 4 is not enough for these two; frozen counterexamples
    ineq = _ineq(n, d, ident)
    assert (ineq.lhs, ineq.rhs, ineq.holds) == (lhs, rhs, False)


def test_e116_e126_hold_for_cubics():
    for n in range(4, 21):
        assert _ineq(n, 3, "E116").holds and _ineq(n, 3, "E126").holds


def test_lemma24_bound_value():
    assert lemma24_bound(3, 3, 2) == Fraction(105, 8)
    with pytest.raises(ValueError):
        lemma24_bound(3, 3, 1)
