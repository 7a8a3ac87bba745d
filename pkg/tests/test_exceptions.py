import pytest

from ciauto import exceptions as X
from ciauto.combinat import CIType

L2 = {(5, 3), (6, 3), (7, 3), (7, 4), (7, 2, 3), (8, 2, 3), (8, 3, 3), (9, 2, 2, 3)}
L3 = {(8, 3), (9, 3), (10, 2, 3)}
L4 = {(11, 3)}
THEOREM = [(5, 2, 3), (6, 2, 3), (6, 2, 4), (6, 3, 3), (7, 2, 2, 3), (7, 2, 3), (8, 2, 3), (8, 3, 3), (9, 2, 2, 3),
           (10, 2, 3)]


def _groups(records):
    return {l: {ci.key() for ci in v} for l, v in X.by_l(records).items()}


def test_codim_values():
    assert X.codim_formula(CIType(5, (3,)), 2) == 5
    assert X.codim_formula(CIType(6, (3,)), 2) == 1
    assert X.codim_formula(CIType(12, (3,)), 5) == 29
    with pytest.raises(ValueError):
        X.codim_formula(CIType(5, (3,)), 6)


def test_point_case_is_a_condition():
    for ci in (CIType(5, (3,)), CIType(7, (2, 4, 5)), CIType(9, (6,))):
        assert X.codim_formula(ci, 0) == ci.c - ci.n


def test_lines_reduce_to_degree_sum():
    for n in range(5, 13):
        for c in range(1, n - 2):
            if not 3 <= n - c <= 4:
                continue
            for top in range(3, 8):
                ci = CIType(n, (2,) * (c - 1) + (top,))
                if 1 in X.l_range(n, c):
                    assert (X.codim_formula(ci, 1) <= n + 1) == X.l1_condition(ci)


def test_l_range():
    assert list(X.l_range(12, 2)) == [4, 5]
    assert list(X.l_range(7, 2)) == [2]


def test_enumeration_n12():
    g = _groups(X.enumerate_lemma44(12))
    assert g[2] == L2 and g[3] == L3 and g[4] == L4
    assert max(g) == 4


def test_enumeration_stable_at_24():
    g = _groups(X.enumerate_lemma44(24))
    assert g[2] == L2 and g[3] == L3 and g[4] == L4 and max(g) == 4


def test_enumeration_needs_n_max_5():
    with pytest.raises(ValueError):
        X.enumerate_lemma44(4)


def test_theorem_list():
    out = X.theorem_exception_filter(X.enumerate_lemma44(12), 12)
    assert [ci.key() for ci in out] == THEOREM


def test_fano_filter_examples():
    assert not X.fano_filter(CIType(5, (2, 4)))  # sum of degrees n+1: K nef
    assert not X.fano_filter(CIType(7, (4,)))  # hypersurface
    assert not X.fano_filter(CIType(7, (2, 2, 2)))  # all quadrics
    assert X.fano_filter(CIType(6, (2, 4)))


def test_monotone_in_each_degree():
    pairs, bad = X.monotonicity_violations(16)
    assert pairs > 10_000 and not bad


def test_enumeration_rejects_points():
    with pytest.raises(ValueError, match="l0_condition"):
        X.enumerate_lemma44(12, l_min=0)


def test_records_consistent():
    for r in X.enumerate_lemma44(12):
        assert r.is_exception == (r.value <= r.threshold) and r.threshold == r.ci.n + 1
