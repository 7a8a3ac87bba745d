import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ciauto import linalg, varieties as V
from ciauto.combinat import CIType, h0_restricted
from ciauto.eigencalc import EigenSpec
from ciauto.poly import HPoly, PrimeField, jacobian_matrix, monomials, prime_with_roots


def test_jacobian_rows():
    J = jacobian_matrix([HPoly.parse("1*z0^2 + 1*z1^2 + 1*z2^2", 3, 5)])
    assert [g.to_text() for g in J[0]] == ["2*z0^1", "2*z1^1", "2*z2^1"]
    J = jacobian_matrix([HPoly.parse("1*z0*z1", 3, 7), HPoly.parse("1*z2^2", 3, 7)])
    assert [[g.to_text() for g in row] for row in J] == [["1*z1^1", "1*z0^1", "0"], ["0", "0", "2*z2^1"]]


def test_jacobian_killed_by_characteristic():
    J = jacobian_matrix([HPoly.parse("1*z0^5", 2, 5)])
    assert all(g.is_zero() for g in J[0])


def test_text_round_trip():
    f = V.nodal_ci(CIType(4, (2, 3)), PrimeField(13), 1)[1]
    assert HPoly.parse(f.to_text(), 5, 13) == f


@st.composite
def forms(draw):
    q = draw(st.sampled_from([7, 11, 13]))
    nv = draw(st.integers(2, 4))
    d = draw(st.integers(1, 4))
    coeffs = draw(st.lists(st.integers(0, q - 1), min_size=len(monomials(nv, d)), max_size=len(monomials(nv, d))))
    return HPoly(nv, q, dict(zip(monomials(nv, d), coeffs)), degree=d)


@given(forms())
def test_euler_identity(f):
    if f.degree % f.q == 0:
        return
    J = jacobian_matrix([f])[0]
    total = HPoly.zero(f.nvars, f.q, f.degree)
    for j, g in enumerate(J):
        total = total + g * HPoly.variable(j, f.nvars, f.q)
    assert total == f.scale(f.degree)


def test_fermat_quadric_is_smooth():
    q = 5
    fermat = HPoly(4, q, {(2, 0, 0, 0): 1, (0, 2, 0, 0): 1, (0, 0, 2, 0): 1, (0, 0, 0, 2): 1})
    rep = V.strata([fermat])
    assert rep.points_scanned == 156 and rep.singular == [] and rep.on_x == 36


def test_cayley_cubic_singular_points():
    rep = V.strata([V.cayley_cubic(11)])
    assert rep.singular == sorted(V.coordinate_points(4))
    assert len(rep.buckets[1]) == 4


def test_quadric_cone_vertex():
    cone = HPoly(4, 11, {(1, 1, 0, 0): 1, (0, 0, 2, 0): 10})
    assert V.strata([cone]).singular == [(0, 0, 0, 1)]


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10_000))
def test_strata_invariant_under_coordinate_change(seed):
    q = 7
    rng = np.random.default_rng(seed)
    while True:
        M = rng.integers(0, q, size=(4, 4))
        if linalg.det_nonzero(M, q):
            break
    F = [V.cayley_cubic(q)]
    moved = [f.substitute(M) for f in F]
    a, b = V.strata(F), V.strata(moved)
    assert {r: len(v) for r, v in a.buckets.items()} == {r: len(v) for r, v in b.buckets.items()}
    # singular points of the pulled-back form are M^{-1} of the original ones
    assert sorted(V.normalize(M @ np.array(p) % q, q) for p in b.singular) == a.singular


def test_nodal_cubic_uses_squarefree_monomials():
    (f,) = V.nodal_ci(CIType(3, (3,)), PrimeField(11), 0)
    assert set(f.terms) == {e for e in monomials(4, 3) if max(e) <= 1}


def test_nodal_spans_for_quadric_cubic():
    F = V.nodal_ci(CIType(4, (2, 3)), PrimeField(101), 7)
    assert all(max(e) <= 1 for f in F for e in f.terms)


def test_nodal_rejects_empty_span():
    with pytest.raises(ValueError, match="empty span"):
        V.nodal_ci(CIType(3, (2,)), PrimeField(11), 0)


def test_verify_nodes_examples():
    rep = V.verify_nodes([V.cayley_cubic(101)], V.coordinate_points(4))
    assert rep.ok and len(rep.nodes) == 4
    F = V.nodal_ci(CIType(4, (2, 3)), PrimeField(101), 7)
    rep = V.verify_nodes(F, V.coordinate_points(5))
    assert rep.ok and len(rep.nodes) == 5
    fermat = HPoly(4, 101, {(3, 0, 0, 0): 1, (0, 3, 0, 0): 1, (0, 0, 3, 0): 1, (0, 0, 0, 3): 1})
    rep = V.verify_nodes([fermat], V.coordinate_points(4))
    assert not rep.ok and set(rep.points.values()) == {"not-on-X"}


@pytest.mark.parametrize("seed", [2, 3])
def test_nodal_quadric_cubic_smooth_elsewhere(seed):
    F = V.nodal_ci(CIType(4, (2, 3)), PrimeField(13), seed)
    assert V.verify_nodes(F, V.coordinate_points(5)).ok
    assert V.strata(F).singular == sorted(V.coordinate_points(5))


def test_h0_oracle_examples():
    f = PrimeField(101)
    assert V.h0_oracle(V.generic_member(CIType(4, (2, 2)), f, 0), 2) == 13
    assert V.h0_oracle(V.generic_member(CIType(3, (3,)), f, 0), 3) == 19
    assert V.h0_oracle([], 2, n=3) == 10


@pytest.mark.parametrize("q", [101, 103])
def test_h0_oracle_matches_formula(q):
    for ci in (CIType(5, (2, 3)), CIType(6, (2, 2, 3)), CIType(5, (3, 3)), CIType(6, (3, 3, 3))):
        F = V.generic_member(ci, PrimeField(q), 1)
        for d in set(ci.degrees):
            assert V.h0_oracle(F, d) == h0_restricted(ci, d)


def test_cokernel_shortfall_for_invariant_cubic():
    rng = np.random.default_rng(0)
    spec = EigenSpec(2, (0, 0, 1, 1))
    F = HPoly(4, 101, {e: int(rng.integers(1, 101)) for e in monomials(4, 3) if (e[2] + e[3]) % 2 == 0})
    rep = V.fixed_cokernel_test([F], spec)
    assert (rep.span_dim, rep.target, rep.certifies) == (17, 19, True)
    with pytest.raises(ValueError, match="identity"):
        V.fixed_cokernel_test([F], EigenSpec(2, (0, 0, 0, 0)))


def test_cokernel_two_quadrics_flagged():
    rng = np.random.default_rng(1)
    spec = EigenSpec(2, (0, 0, 0, 1, 1))
    Q = [HPoly(5, 101, {e: int(rng.integers(1, 101)) for e in monomials(5, 2) if (e[3] + e[4]) % 2 == 0})
         for _ in range(2)]
    rep = V.fixed_cokernel_test(Q, spec)
    assert rep.shortfall == 0 and rep.exception is not None


def test_pencil_orders():
    rep = V.pencil_automorphisms((0, 1, 2, 3, 4), PrimeField(101))
    assert rep.group_order == 16 and rep.torus_squares_constant
    # x -> 4 - x permutes {0,...,4}: arithmetic progressions are not general
    assert rep.mobius_fixers == [(100, 4, 0, 1)]
    rep = V.pencil_automorphisms((0, 1, 2, 3, 4, 5), PrimeField(103))
    assert rep.group_order == 32
    with pytest.raises(ValueError, match="distinct"):
        V.pencil_automorphisms((0, 1, 1, 3, 4), PrimeField(101))


def test_pencil_seeded_eigenvalues():
    from ciauto.acceptance import pencil_eigenvalues

    for n in (4, 5, 6):
        rep = V.pencil_automorphisms(pencil_eigenvalues(n, 101), PrimeField(101))
        assert rep.group_order == 2**n and rep.mobius_trivial


def test_pencil_detects_hidden_symmetry():
    # x -> (28 - x)/(12x + 1) permutes these six values mod 101
    lam = (3, 17, 29, 58, 71, 90)
    rep = V.pencil_automorphisms(lam, PrimeField(101))
    assert rep.mobius_fixers == [(100, 28, 12, 1)]
    image = {(28 - x) * pow(12 * x + 1, -1, 101) % 101 for x in lam}
    assert image == set(lam)


def test_cyclic_example():
    q = prime_with_roots(10, 101)
    rep = V.cyclic_22_example(5, PrimeField(q))
    assert rep.ok and rep.d_scalar == rep.eta and rep.e_scalar == 1
    rep = V.cyclic_22_example(4, PrimeField(prime_with_roots(8, 11)), check_smooth=True)
    assert rep.ok and rep.smooth_label.startswith("no singular")
    with pytest.raises(ValueError, match="prime to the characteristic"):
        V.cyclic_22_example(5, PrimeField(5))


def test_chord_of_two_points_and_a_point():
    q = 5
    center = V.LinearSubspace.span([(1, 1, 1)], 3, q)
    target = V.LinearSubspace.span([(1, 0, 0), (0, 1, 0)], 3, q)
    rep = V.chord_and_projection([(1, 0, 0), (0, 1, 0)], [(0, 0, 1)], center, target)
    line_a = {V.normalize((1, 0, t), q) for t in range(q)} | {(0, 0, 1)}
    line_b = {V.normalize((0, 1, t), q) for t in range(q)} | {(0, 0, 1)}
    assert set(rep.chord) == line_a | line_b
    with pytest.raises(ValueError, match="disjoint"):
        V.chord_and_projection([(1, 0, 0)], [(0, 0, 1)], V.LinearSubspace.span([(1, 0, 0)], 3, q), target)


def test_projection_of_cayley_cubic():
    rep = V.projection_dimension_check([V.cayley_cubic(11)], 0, 0)
    assert rep["ok"] and rep["est_dim"] == 2


def test_pluecker_stabilizer():
    f = PrimeField(101)
    assert V.pluecker_stabilizer(2, 3, f, 0).trivial
    coord = V.pluecker_stabilizer(2, 3, f, 0, basis=[[1, 0, 0, 0], [0, 1, 0, 0]])
    assert not coord.trivial and not coord.all_nonzero
    assert all(V.pluecker_stabilizer(1, 4, f, s).trivial for s in range(100))


def test_pluecker_routes_agree():
    f = PrimeField(7)
    for seed in range(5):
        a = V.pluecker_stabilizer(2, 3, f, seed)
        b = V.pluecker_stabilizer(2, 3, f, seed, strategy="enumerate")
        assert a.trivial == b.trivial


def test_budget_is_enforced():
    with pytest.raises(V.BudgetExceeded):
        V.strata([V.cayley_cubic(101)], budget=1000)
