import random

import pytest
from hypothesis import given, strategies as st

from ciauto import birres as B


@st.composite
def maps(draw, n_max=10):
    seed = draw(st.integers(0, 2**32 - 1))
    return B.random_map(random.Random(seed), n_max)


def test_flag_dimensions():
    m = B.ScalingMap((0, 1), (0,), 2)
    assert (m.f_dim(1), m.g_dim(1)) == (1, 0)
    m = B.ScalingMap((0, 1), (2,), 4)
    assert (m.f_dim(1), m.g_dim(1)) == (1, 2)
    m = B.ScalingMap((0, 2, 5), (1, 3), 6)
    rep = B.flags(m)
    assert (m.f_dim(1), m.f_dim(2)) == (4, 2) and rep.nested and rep.ok


def test_map_validation():
    with pytest.raises(ValueError):
        B.ScalingMap((0, 1), (2,), 2)
    with pytest.raises(ValueError):
        B.ScalingMap((0, 0), (0,), 2)
    with pytest.raises(ValueError):
        B.ScalingMap((0, 1, 2), (0,), 2)


def test_arc_examples():
    m = B.ScalingMap((0, 1), (0,), 2)
    arc = B.Arc((1, 0, 0), (2, 1, 3))
    assert arc.limit() == (0, 1, 3)
    assert B.arc_limit(m, arc) == B.ArcLimit((2, 1, 3), 1, False)
    assert B.arc_limit(m, B.Arc((0, 0, 0), (1, 1, 1))) == B.ArcLimit((1, 0, 0), 0, False)


def test_boundary_arc_reports_tie():
    m = B.ScalingMap((0, 2), (0,), 2)
    st_ = B.stratum(m, B.Arc((1, 0, 0), (1, 1, 1)))
    assert (st_.index, st_.tie) == (0, True)


@pytest.mark.parametrize(
    "m", [B.ScalingMap((0, 1), (0,), 2), B.ScalingMap((0, 1, 2), (0, 1), 3), B.ScalingMap((0, 3), (4,), 5)]
)
def test_correspondence_examples(m):
    rep = B.stratum_correspondence(m, 100, 0)
    assert rep.ok and rep.checked > 0


def test_all_small_maps():
    for n in range(1, 6):
        for m in B.all_maps(n):
            assert B.flags(m).ok and B.dim_formula_ok(m)


@given(maps())
def test_duality_and_pair_sums(m):
    rep = B.flags(m)
    assert rep.ok
    l, n = m.l, m.n
    for i in range(l + 1):
        assert m.f_dim(i) + m.f_dim(i + 1) + m.g_dim(l - i) + m.g_dim(l - i + 1) == 2 * (n - 1)


@given(maps())
def test_reversed_twice_is_identity(m):
    assert m.reversed().reversed() == m


@given(maps(), st.integers(0, 2**32 - 1), st.integers(-5, 5))
def test_stratum_invariant_under_t_power(m, seed, k):
    rng = random.Random(seed)
    arc = B.random_arc_in(m, rng.randint(0, m.l), rng)
    assert B.stratum(m, arc.times_t(k)) == B.stratum(m, arc)
    assert B.arc_limit(m, arc.times_t(k)).limit == B.arc_limit(m, arc).limit


@given(maps(), st.integers(0, 2**32 - 1))
def test_forward_then_inverse(m, seed):
    rng = random.Random(seed)
    arc = B.random_arc_in(m, 0, rng)
    back = B.arc_limit(m, B.apply_map(m, arc, "forward"), "inverse")
    assert B.same_point(back.limit, arc.limit())


@given(maps(), st.integers(0, 2**32 - 1))
def test_random_arcs_land_in_their_stratum(m, seed):
    rng = random.Random(seed)
    i = rng.randint(0, m.l)
    assert B.stratum(m, B.random_arc_in(m, i, rng)) == B.Stratum(i, False)


def test_sweep_small():
    s = B.sweep(100, 5, corr_maps=10, corr_samples=20)
    assert s.ok and s.maps == 100 and s.roundtrip_checked == 100
