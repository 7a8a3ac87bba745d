"""Finite-field checks on explicit complete intersections.

Point enumeration stands in for the algebraic closure, so every smoothness
statement here means "no singular rational point over F_q" and is reported
that way.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from math import comb, log

import numpy as np

from . import linalg
from .eigencalc import EigenSpec
from .poly import HPoly, PrimeField, jacobian_matrix, monomials

DEFAULT_BUDGET = 2_000_000

Point = tuple[int, ...]


class BudgetExceeded(RuntimeError):
    pass


# -- points and linear subspaces ---------------------------------------------


def normalize(point, q: int) -> Point:
    """Scale so the first nonzero coordinate is 1."""
    pt = [int(x) % q for x in point]
    for x in pt:
        if x:
            inv = pow(x, q - 2, q)
            return tuple(y * inv % q for y in pt)
    raise ValueError("the zero vector is not a projective point")


def normalize_rows(P: np.ndarray, q: int) -> np.ndarray:
    P = np.asarray(P, dtype=np.int64) % q
    if P.size == 0:
        return P
    lead = np.argmax(P != 0, axis=1)
    vals = P[np.arange(P.shape[0]), lead]
    if np.any(vals == 0):
        raise ValueError("zero row")
    inv_table = np.array([0] + [pow(x, q - 2, q) for x in range(1, q)], dtype=np.int64)
    return P * inv_table[vals][:, None] % q


def count_projective_points(k: int, q: int) -> int:
    """#P^{k-1}(F_q)."""
    return (q**k - 1) // (q - 1)


def projective_points(k: int, q: int, budget: int = DEFAULT_BUDGET) -> np.ndarray:
    """All normalized points of P^{k-1}(F_q) as rows."""
    total = count_projective_points(k, q)
    if total > budget:
        raise BudgetExceeded(f"{total} points in P^{k - 1}(F_{q}) exceed budget {budget}")
    blocks = []
    for lead in range(k):
        free = k - 1 - lead
        cnt = q**free
        block = np.zeros((cnt, k), dtype=np.int64)
        block[:, lead] = 1
        if free:
            idx = np.arange(cnt, dtype=np.int64)
            for j in range(free):
                block[:, k - 1 - j] = (idx // q**j) % q
        blocks.append(block)
    return np.vstack(blocks)


def coordinate_points(nvars: int) -> list[Point]:
    return [tuple(1 if i == j else 0 for i in range(nvars)) for j in range(nvars)]


@dataclass(frozen=True)
class LinearSubspace:
    """Projective linear subspace of P^{nvars-1} cut out by row-reduced forms."""

    nvars: int
    q: int
    forms: tuple[tuple[int, ...], ...]

    @classmethod
    def from_forms(cls, forms, nvars: int, q: int) -> "LinearSubspace":
        forms = np.asarray(forms, dtype=np.int64).reshape(-1, nvars)
        if forms.shape[0]:
            R, _ = linalg.rref(forms, q)
        else:
            R = forms
        return cls(nvars, q, tuple(tuple(int(x) for x in row) for row in R))

    @classmethod
    def whole(cls, nvars: int, q: int) -> "LinearSubspace":
        return cls(nvars, q, ())

    @classmethod
    def coordinate(cls, zero_indices, nvars: int, q: int) -> "LinearSubspace":
        """{z_i = 0 for i in zero_indices}."""
        rows = [[1 if j == i else 0 for j in range(nvars)] for i in zero_indices]
        return cls.from_forms(rows, nvars, q)

    @classmethod
    def span(cls, points, nvars: int, q: int) -> "LinearSubspace":
        P = np.asarray(points, dtype=np.int64).reshape(-1, nvars)
        return cls.from_forms(linalg.nullspace(P, q, nvars), nvars, q)

    @classmethod
    def random(cls, dim: int, nvars: int, q: int, rng: np.random.Generator) -> "LinearSubspace":
        while True:
            P = rng.integers(0, q, size=(dim + 1, nvars))
            if linalg.rank(P, q) == dim + 1:
                return cls.span(P, nvars, q)

    @property
    def dim(self) -> int:
        return self.nvars - 1 - len(self.forms)

    def basis(self) -> np.ndarray:
        """Rows spanning the underlying vector space."""
        if not self.forms:
            return np.eye(self.nvars, dtype=np.int64)
        return linalg.nullspace(np.array(self.forms), self.q, self.nvars)

    def contains(self, point) -> bool:
        return all(sum(a * b for a, b in zip(f, point)) % self.q == 0 for f in self.forms)

    def points(self, budget: int = DEFAULT_BUDGET) -> np.ndarray:
        B = self.basis()
        if B.shape[0] == 0:
            return np.zeros((0, self.nvars), dtype=np.int64)
        Y = projective_points(B.shape[0], self.q, budget)
        return normalize_rows(Y @ B % self.q, self.q)

    def disjoint_from(self, other: "LinearSubspace") -> bool:
        B1, B2 = self.basis(), other.basis()
        if B1.shape[0] == 0 or B2.shape[0] == 0:
            return True
        return linalg.rank(np.vstack([B1, B2]), self.q) == B1.shape[0] + B2.shape[0]


def estimate_dim(count: int, q: int) -> int:
    """Rough dimension of a variety from its number of F_q-points.

    Sampled evidence only: round(log_q(count)), and -1 for the empty set.
    """
    if count <= 0:
        return -1
    return int(round(log(count) / log(q)))


# -- singular strata -----------------------------------------------------------


@dataclass
class StrataReport:
    q: int
    lam_dim: int
    codim: int
    points_scanned: int
    buckets: dict[int, list[Point]]

    @property
    def singular(self) -> list[Point]:
        return sorted(p for r, pts in self.buckets.items() if r >= 1 for p in pts)

    @property
    def on_x(self) -> int:
        return sum(len(v) for v in self.buckets.values())

    def label(self) -> str:
        if self.singular:
            return f"{len(self.singular)} singular rational point(s) over F_{self.q}"
        return f"no singular rational point over F_{self.q}"


def _check_forms(F: list[HPoly]) -> tuple[int, int]:
    if not F:
        raise ValueError("need at least one form")
    nv, q = F[0].nvars, F[0].q
    for f in F:
        if f.nvars != nv or f.q != q:
            raise ValueError("forms must share variables and field")
    return nv, q


def strata(F: list[HPoly], lam: LinearSubspace | None = None, field_: PrimeField | None = None,
           budget: int = DEFAULT_BUDGET) -> StrataReport:
    """Bucket the F_q-points of X cap Lambda by corank of the restricted Jacobian.

    X cap Lambda is treated as cut out by the F_i restricted to Lambda; the
    corank of the c x (dim Lambda + 1) matrix J(p) B is recorded, where B spans
    Lambda.  Corank >= 1 is the singular stratum for a proper intersection.
    """
    nv, q = _check_forms(F)
    if field_ is not None and field_.q != q:
        raise ValueError("field disagrees with the forms")
    lam = lam or LinearSubspace.whole(nv, q)
    B = lam.basis()
    k = B.shape[0]
    if k == 0:
        return StrataReport(q, -1, len(F), 0, {})
    Y = projective_points(k, q, budget)
    P = Y @ B % q
    mask = np.ones(P.shape[0], dtype=bool)
    for f in F:
        mask &= f.evaluate_many(P) == 0
    X = P[mask]
    c = len(F)
    J = jacobian_matrix(F)
    grads = np.zeros((X.shape[0], c, nv), dtype=np.int64)
    for i in range(c):
        for j in range(nv):
            grads[:, i, j] = J[i][j].evaluate_many(X)
    restricted = np.einsum("pcj,kj->pck", grads, B) % q
    buckets: dict[int, list[Point]] = {}
    Xn = normalize_rows(X, q) if X.size else X
    for row, M in zip(Xn, restricted):
        r = c - linalg.small_rank(M.tolist(), q)
        buckets.setdefault(r, []).append(tuple(int(x) for x in row))
    for r in buckets:
        buckets[r].sort()
    return StrataReport(q, lam.dim, c, int(P.shape[0]), buckets)


# -- nodal complete intersections ---------------------------------------------


def multiplicity_span(nvars: int, d: int, m: int) -> list[tuple[int, ...]]:
    """Monomials of degree d with every exponent at most d - m.

    These are exactly the forms vanishing to order m at every coordinate point.
    """
    return [e for e in monomials(nvars, d) if max(e) <= d - m]


def nodal_ci(ci, field_: PrimeField, seed: int) -> list[HPoly]:
    """Random member with ordinary double points at the n+1 coordinate points.

    F_1..F_{c-1} pass through every coordinate point; F_c is singular there.
    Coefficients are uniform nonzero residues drawn from ``seed``.
    """
    n, degs = ci.n, ci.degrees
    nv, q = n + 1, field_.q
    spans = [multiplicity_span(nv, d, 1) for d in degs[:-1]]
    spans.append(multiplicity_span(nv, degs[-1], 2))
    for d, sp, m in zip(degs, spans, [1] * (len(degs) - 1) + [2]):
        if not sp:
            raise ValueError(f"empty span: degree {d} with multiplicity {m} at every coordinate point")
    if degs[-1] < 3 or n < len(degs) + 2:
        raise ValueError("nodal construction needs d_c >= 3 and n >= c + 2")
    rng = np.random.default_rng(seed)
    out = []
    for sp in spans:
        coeffs = rng.integers(1, q, size=len(sp))
        out.append(HPoly(nv, q, {e: int(c) for e, c in zip(sp, coeffs)}))
    return out


def cayley_cubic(q: int) -> HPoly:
    """Sum of the four squarefree cubic monomials in z_0..z_3."""
    return HPoly(4, q, {e: 1 for e in multiplicity_span(4, 3, 2)})


@dataclass
class NodeReport:
    q: int
    points: dict[Point, str]

    @property
    def ok(self) -> bool:
        return bool(self.points) and all(v == "node" for v in self.points.values())

    @property
    def nodes(self) -> list[Point]:
        return sorted(p for p, v in self.points.items() if v == "node")


def verify_nodes(F: list[HPoly], pts, field_: PrimeField | None = None) -> NodeReport:
    """Check that each point is an ordinary double point of X = {F = 0}.

    Works on the affine chart where the point has coordinate 1.  The Hessian
    of F_c - sum lambda_i F_i, with lambda chosen so the gradient lies in the
    span of the others, is restricted to the common tangent space of
    F_1..F_{c-1} and must be nondegenerate there.
    """
    nv, q = _check_forms(F)
    if q == 2:
        raise ValueError("the Hessian test is not valid in characteristic 2")
    c = len(F)
    J = jacobian_matrix(F)
    H = [[[J[i][a].derivative(b) for b in range(nv)] for a in range(nv)] for i in range(c)]
    result: dict[Point, str] = {}
    for p in pts:
        p = normalize(p, q)
        if any(f(p) for f in F):
            result[p] = "not-on-X"
            continue
        k = next(i for i, x in enumerate(p) if x)
        others = [j for j in range(nv) if j != k]
        G = np.array([[J[i][j](p) for j in others] for i in range(c)], dtype=np.int64)
        if c > 1 and linalg.rank(G[: c - 1], q) < c - 1:
            result[p] = "others-singular"
            continue
        full = linalg.rank(G, q)
        if full == c:
            result[p] = "smooth"
            continue
        if full < c - 1:
            result[p] = "corank>1"
            continue
        lam = np.zeros(c - 1, dtype=np.int64)
        if c > 1:
            lam = linalg.solve(G[: c - 1].T, G[c - 1], q)
        hess = np.array([[H[c - 1][a][b](p) for b in others] for a in others], dtype=np.int64)
        for i in range(c - 1):
            hi = np.array([[H[i][a][b](p) for b in others] for a in others], dtype=np.int64)
            hess = (hess - int(lam[i]) * hi) % q
        T = linalg.nullspace(G[: c - 1], q, len(others)) if c > 1 else np.eye(len(others), dtype=np.int64)
        Q = T @ hess @ T.T % q
        result[p] = "node" if linalg.rank(Q, q) == T.shape[0] else "degenerate"
    return NodeReport(q, result)


def h0_oracle(F: list[HPoly], d: int, n: int | None = None, q: int | None = None) -> int:
    """dim S_d / I_d by Gaussian elimination on the multiplication matrix."""
    if d < 0:
        return 0
    if F:
        nv, q = _check_forms(F)
    else:
        if n is None:
            raise ValueError("n is required when F is empty")
        nv, q = n + 1, q or 101
    basis = monomials(nv, d)
    if not F:
        return len(basis)
    index = {e: i for i, e in enumerate(basis)}
    rows = []
    for f in F:
        for m in monomials(nv, d - f.degree):
            row = np.zeros(len(basis), dtype=np.int64)
            for e, cf in f.terms.items():
                row[index[tuple(a + b for a, b in zip(e, m))]] = cf
            rows.append(row)
    if not rows:
        return len(basis)
    return len(basis) - linalg.rank(np.array(rows), q)


def ideal_rows(F: list[HPoly], d: int, index: dict) -> list[np.ndarray]:
    nv = F[0].nvars
    rows = []
    for f in F:
        for m in monomials(nv, d - f.degree):
            row = np.zeros(len(index), dtype=np.int64)
            for e, cf in f.terms.items():
                row[index[tuple(a + b for a, b in zip(e, m))]] = cf
            rows.append(row)
    return rows


def generic_member(ci, field_: PrimeField, seed: int) -> list[HPoly]:
    """Fermat-type forms sum_j c_ij z_j^{d_i} plus a seeded sparse perturbation."""
    rng = np.random.default_rng(seed)
    nv, q = ci.n + 1, field_.q
    out = []
    for d in ci.degrees:
        terms = {}
        for j in range(nv):
            e = [0] * nv
            e[j] = d
            terms[tuple(e)] = int(rng.integers(1, q))
        mons = monomials(nv, d)
        for idx in rng.choice(len(mons), size=min(len(mons), nv + 2), replace=False):
            e = mons[int(idx)]
            terms[e] = (terms.get(e, 0) + int(rng.integers(1, q))) % q
        out.append(HPoly(nv, q, terms))
    return out


# -- fixed cokernel test -------------------------------------------------------


@dataclass
class CokernelReport:
    degrees: tuple[int, ...]
    residues: tuple[int, ...]
    span_dim: int
    target: int
    exception: str | None = None

    @property
    def shortfall(self) -> int:
        return self.target - self.span_dim

    @property
    def certifies(self) -> bool:
        return self.shortfall > 0


def form_residue(f: HPoly, spec: EigenSpec) -> int:
    res = {sum(l * e for l, e in zip(spec.weights, m)) % spec.p for m in f.terms}
    if len(res) != 1:
        raise ValueError(f"form is not a sigma-eigenvector: residues {sorted(res)}")
    return res.pop()


def fixed_cokernel_test(F: list[HPoly], spec: EigenSpec, field_: PrimeField | None = None) -> CokernelReport:
    """dim(Im J_X + sum_i E_{X,d_i,xi_i}) against sum_i h^0(O_X(d_i)).

    Everything is computed in the ambient spaces S_{d_i} with the ideal
    I_{d_i} appended, so restriction to X is a quotient by I.  A positive
    shortfall means sigma cannot act trivially on coker J_X.
    """
    nv, q = _check_forms(F)
    if spec.n + 1 != nv:
        raise ValueError("spec and forms have different numbers of variables")
    if spec.mu < 2:
        raise ValueError("the identity spec is excluded (mu >= 2 required)")
    if (q - 1) % spec.p:
        raise ValueError(f"F_{q} has no primitive {spec.p}-th root of unity")
    residues = tuple(form_residue(f, spec) for f in F)
    degs = tuple(f.degree for f in F)
    blocks = [monomials(nv, d) for d in degs]
    offsets = np.cumsum([0] + [len(b) for b in blocks])
    width = int(offsets[-1])
    indices = [{e: i for i, e in enumerate(b)} for b in blocks]

    def embed(i: int, row: np.ndarray) -> np.ndarray:
        v = np.zeros(width, dtype=np.int64)
        v[offsets[i] : offsets[i + 1]] = row
        return v

    ideal = []
    for i, d in enumerate(degs):
        for row in ideal_rows(F, d, indices[i]):
            ideal.append(embed(i, row))
    jac = jacobian_matrix(F)
    image = []
    for k in range(nv):
        zk = HPoly.variable(k, nv, q)
        for j in range(nv):
            v = np.zeros(width, dtype=np.int64)
            for i in range(len(F)):
                g = jac[i][j] * zk
                for e, cf in g.terms.items():
                    v[offsets[i] + indices[i][e]] = cf
            image.append(v)
    eig = []
    for i, (d, w) in enumerate(zip(degs, residues)):
        for e in blocks[i]:
            if sum(l * x for l, x in zip(spec.weights, e)) % spec.p == w:
                v = np.zeros(width, dtype=np.int64)
                v[offsets[i] + indices[i][e]] = 1
                eig.append(v)
    r_ideal = linalg.rank(np.array(ideal), q) if ideal else 0
    r_all = linalg.rank(np.array(ideal + image + eig), q)
    target = width - r_ideal
    exc = None
    if degs == (2, 2):
        exc = "type (2,2): intersections of two quadrics carry the sign-change automorphisms; no shortfall is expected"
    return CokernelReport(degs, residues, r_all - r_ideal, target, exc)


# -- the pencil of quadrics ----------------------------------------------------


@dataclass
class PencilReport:
    q: int
    n: int
    sign_maps_checked: int
    sign_maps_preserving: int
    scalar_sign_maps: int
    square_solution_dim: int
    mobius_fixers: list
    torus_squares_constant: bool

    @property
    def group_order(self) -> int:
        return self.sign_maps_preserving // self.scalar_sign_maps

    @property
    def mobius_trivial(self) -> bool:
        return not self.mobius_fixers


def _mobius_maps(src, dst, q):
    """Matrix [[a,b],[c,d]] with (a x + b)/(c x + d) sending src_k to dst_k."""
    rows = [[x, 1, (-y * x) % q, (-y) % q] for x, y in zip(src, dst)]
    ns = linalg.nullspace(np.array(rows, dtype=np.int64), q, 4)
    if ns.shape[0] != 1:
        return None
    return [int(v) for v in ns[0]]


def _apply_mobius(g, x, q):
    a, b, c, d = g
    den = (c * x + d) % q
    if den == 0:
        return None
    return (a * x + b) * pow(den, q - 2, q) % q


def pencil_automorphisms(eigenvalues, field_: PrimeField) -> PencilReport:
    """Automorphisms of X = {sum z_i^2 = 0, sum lambda_i z_i^2 = 0}.

    Checks every sign map against both forms, solves for all diagonal maps
    preserving the pencil, and searches the Moebius maps of P^1 that permute
    the eigenvalues (each is fixed by the images of three of them).
    """
    q = field_.q
    if q == 2:
        raise ValueError("odd characteristic required")
    lam = [int(x) % q for x in eigenvalues]
    if len(set(lam)) != len(lam):
        raise ValueError("eigenvalues must be distinct")
    nv = len(lam)
    if nv < 5:
        raise ValueError("need n+1 >= 5 eigenvalues")
    sq = lambda j: tuple(2 if i == j else 0 for i in range(nv))  # noqa: E731
    D = HPoly(nv, q, {sq(j): 1 for j in range(nv)})
    E = HPoly(nv, q, {sq(j): lam[j] for j in range(nv)})
    index = {e: i for i, e in enumerate(monomials(nv, 2))}
    base = np.array([D.coefficient_vector(index), E.coefficient_vector(index)])
    preserving = scalars = checked = 0
    for signs in product((1, -1), repeat=nv):
        checked += 1
        M = np.diag(signs)
        pulled = np.array([D.substitute(M).coefficient_vector(index), E.substitute(M).coefficient_vector(index)])
        if linalg.rank(np.vstack([base, pulled]), q) == 2:
            preserving += 1
            if len(set(signs)) == 1:
                scalars += 1
    # diagonal maps: t_i^2 = alpha + beta lambda_i and lambda_i t_i^2 = gamma + delta lambda_i
    rows = [[x, x * x % q, q - 1, (-x) % q] for x in lam]
    ns = linalg.nullspace(np.array(rows, dtype=np.int64), q, 4)
    ab = ns[:, :2] % q if ns.size else np.zeros((0, 2), dtype=np.int64)
    dim_ab = linalg.rank(ab, q) if ab.size else 0
    constant = dim_ab == 1 and bool(np.all(ab[:, 1] == 0))
    fixers = []
    src = lam[:3]
    lamset = set(lam)
    for dst in permutations(lam, 3):
        g = _mobius_maps(src, dst, q)
        if g is None:
            continue
        if tuple(dst) == tuple(src):
            continue
        images = [_apply_mobius(g, x, q) for x in lam]
        if None not in images and set(images) == lamset:
            fixers.append(tuple(g))
    return PencilReport(q, nv - 1, checked, preserving, scalars, dim_ab, fixers, constant)


# -- the cyclic (2,2) example ---------------------------------------------------


@dataclass
class CyclicReport:
    n: int
    q: int
    eta: int
    half: int
    identity_d: bool
    identity_e: bool
    d_scalar: int | None
    e_scalar: int | None
    smooth_label: str | None = None

    @property
    def ok(self) -> bool:
        return self.identity_d and self.identity_e


def _scalar_multiple(f: HPoly, g: HPoly) -> int | None:
    """s with f = s*g, or None."""
    if g.is_zero():
        return None
    e0 = next(iter(g.terms))
    s = f.terms.get(e0, 0) * pow(g.terms[e0], f.q - 2, f.q) % f.q
    return s if f == g.scale(s) else None


def cyclic_22_example(n: int, field_: PrimeField, check_smooth: bool = False,
                      budget: int = DEFAULT_BUDGET) -> CyclicReport:
    """sigma: z_i -> eta^{1/2} z_{i+1} on D = {sum z_i^2}, E = {sum eta^i z_i^2} in P^{n-1}.

    Verifies the two displayed pullbacks coefficient by coefficient and reports
    the scalar by which each quadric is multiplied.
    """
    q = field_.q
    if n % q == 0:
        raise ValueError(f"n={n} is not prime to the characteristic {q}")
    if (q - 1) % (2 * n) == 0:
        half = field_.primitive_root_of_unity(2 * n)
        eta = half * half % q
    elif n % 2 == 1 and (q - 1) % n == 0:
        eta = field_.primitive_root_of_unity(n)
        half = pow(eta, (n + 1) // 2, q)
    else:
        raise ValueError(f"no suitable root of unity: F_{q} lacks a square root of a primitive {n}-th root")
    sq = lambda j: tuple(2 if i == j % n else 0 for i in range(n))  # noqa: E731
    D = HPoly(n, q, {sq(i): 1 for i in range(n)})
    E = HPoly(n, q, {sq(i): pow(eta, i, q) for i in range(n)})
    M = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        M[i][(i + 1) % n] = half
    D_pull, E_pull = D.substitute(M), E.substitute(M)
    # the displayed right-hand sides, built term by term
    D_rhs = HPoly(n, q, {sq(i + 1): eta for i in range(n)})
    E_rhs = HPoly(n, q, {sq(i + 1): pow(eta, i, q) * eta for i in range(n)})
    label = None
    if check_smooth:
        label = strata([D, E], None, field_, budget).label()
    return CyclicReport(
        n, q, eta, half,
        D_pull == D_rhs, E_pull == E_rhs,
        _scalar_multiple(D_pull, D), _scalar_multiple(E_pull, E),
        label,
    )


# -- chords and projections -----------------------------------------------------


@dataclass
class ChordProjection:
    chord: list[Point]
    image: list[Point]
    projected_from: int


def _line_points(a, b, q):
    a, b = np.array(a), np.array(b)
    pts = {normalize(b, q)}
    for t in range(q):
        pts.add(normalize((a + t * b) % q, q))
    return pts


def chord_set(A, B, q: int, budget: int = DEFAULT_BUDGET) -> list[Point]:
    out: set[Point] = set()
    for a in A:
        for b in B:
            if normalize(a, q) == normalize(b, q):
                continue
            out |= _line_points(a, b, q)
            if len(out) > budget:
                raise BudgetExceeded("chord set exceeds budget")
    return sorted(out)


def project(points, center: LinearSubspace, target: LinearSubspace) -> list[Point]:
    """Linear projection from ``center`` onto the complementary ``target``."""
    q, nv = center.q, center.nvars
    K, K2 = center.basis(), target.basis()
    if (center.dim + target.dim) != nv - 2:
        raise ValueError("dimensions of center and target must add up to n - 1")
    if not center.disjoint_from(target):
        raise ValueError("center and target must be disjoint")
    basis = np.vstack([K, K2]) if K.size else K2
    inv = linalg.inverse(basis.T % q, q)
    out = set()
    for x in points:
        coords = inv @ np.array(x, dtype=np.int64) % q
        v = coords[K.shape[0]:] @ K2 % q
        if np.any(v):
            out.add(normalize(v, q))
    return sorted(out)


def chord_and_projection(A, B, center: LinearSubspace, target: LinearSubspace,
                         S=None, budget: int = DEFAULT_BUDGET) -> ChordProjection:
    """Chord set C_{A,B} and the projection of S (default: the chord set)."""
    q = center.q
    if isinstance(B, LinearSubspace):
        B = [tuple(int(x) for x in row) for row in B.points(budget)]
    chord = chord_set(A, B, q, budget)
    src = chord if S is None else [tuple(int(x) for x in s) for s in S]
    return ChordProjection(chord, project(src, center, target), len(src))


def section_dimension_check(F: list[HPoly], lam_dims, samples: int, seed: int,
                            budget: int = DEFAULT_BUDGET) -> list[dict]:
    """Sampled evidence for dim(X cap Lambda) <= max(dim X / 2, dim Lambda - c)."""
    nv, q = _check_forms(F)
    c = len(F)
    dim_x = nv - 1 - c
    rng = np.random.default_rng(seed)
    out = []
    for k in lam_dims:
        for _ in range(samples):
            lam = LinearSubspace.random(k, nv, q, rng)
            rep = strata(F, lam, None, budget)
            est = estimate_dim(rep.on_x, q)
            bound = max(Fraction(dim_x, 2), Fraction(k - c))
            out.append({"lam_dim": k, "points": rep.on_x, "est_dim": est, "bound": bound, "ok": est <= bound})
    return out


def projection_dimension_check(F: list[HPoly], center_dim: int, seed: int,
                               budget: int = DEFAULT_BUDGET) -> dict:
    """Sampled evidence for the lower bound on the projection of X from a center.

    With the full space as the enclosing subspace the bound reads
    dim pi(X \\ Lambda) >= dim X - min(max((m-1)/2, m + dim Lambda - n + 1),
    max(dim Lambda, -1)), m = dim X.
    """
    nv, q = _check_forms(F)
    n = nv - 1
    m = n - len(F)
    rng = np.random.default_rng(seed)
    center = LinearSubspace.random(center_dim, nv, q, rng)
    while True:
        target = LinearSubspace.random(n - 1 - center_dim, nv, q, rng)
        if center.disjoint_from(target):
            break
    X = strata(F, None, None, budget)
    pts = [p for bucket in X.buckets.values() for p in bucket]
    image = project(pts, center, target)
    drop = min(max(Fraction(m - 1, 2), Fraction(m + center_dim - n + 1)), Fraction(max(center_dim, -1)))
    bound = m - drop
    est = estimate_dim(len(image), q)
    return {"image_points": len(image), "est_dim": est, "bound": bound, "ok": est >= bound}


# -- Pluecker stabilizers --------------------------------------------------------


@dataclass
class StabilizerReport:
    m: int
    n: int
    q: int
    pluecker_support: int
    all_nonzero: bool
    lattice_rank: int
    lattice_index: int | None
    strategy: str
    fq_points: int | None = None

    @property
    def trivial(self) -> bool:
        if self.strategy == "enumerate":
            return self.fq_points == 1
        return self.lattice_rank == self.n + 1 and self.lattice_index == 1


def pluecker_coordinates(M, q: int) -> dict[tuple[int, ...], int]:
    M = np.asarray(M, dtype=np.int64)
    m, nv = M.shape
    return {I: linalg.det(M[:, I], q) for I in combinations(range(nv), m)}


def _lattice_rank_index(vectors: list[list[int]], dim: int) -> tuple[int, int | None]:
    """Rank of the integer span and its index in Z^dim when of full rank."""
    rows = [list(v) for v in vectors if any(v)]
    r = 0
    diag = []
    for col in range(dim):
        # Euclid down the column among rows r..end
        while True:
            nz = [i for i in range(r, len(rows)) if rows[i][col]]
            if len(nz) <= 1:
                break
            i0 = min(nz, key=lambda i: abs(rows[i][col]))
            for i in nz:
                if i != i0:
                    f = rows[i][col] // rows[i0][col]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[i0])]
        nz = [i for i in range(r, len(rows)) if rows[i][col]]
        if not nz:
            continue
        rows[r], rows[nz[0]] = rows[nz[0]], rows[r]
        diag.append(abs(rows[r][col]))
        r += 1
    index = None
    if r == dim:
        index = 1
        for x in diag:
            index *= x
    return r, index


def pluecker_stabilizer(m: int, n: int, field_: PrimeField, seed: int, basis=None,
                        strategy: str = "lattice", budget: int = DEFAULT_BUDGET) -> StabilizerReport:
    """Diagonal torus stabilizer of an m-dimensional subspace of F_q^{n+1}.

    A torus element a fixes the subspace iff a_I is constant over the support
    of its Pluecker vector, where a_I = prod_{i in I} a_i.  The lattice route
    checks that the characters e_I - e_J, together with e_0 (scalars), span
    Z^{n+1}; the enumeration route counts F_q-points of the stabilizer with
    a_0 = 1.
    """
    if not 1 <= m <= n:
        raise ValueError("need 1 <= m <= n")
    q, nv = field_.q, n + 1
    rng = np.random.default_rng(seed)
    if basis is None:
        while True:
            M = rng.integers(0, q, size=(m, nv))
            pl = pluecker_coordinates(M, q)
            if all(pl.values()):
                break
    else:
        M = np.asarray(basis, dtype=np.int64)
        pl = pluecker_coordinates(M, q)
    support = [I for I, v in pl.items() if v]
    vecs = [[1] + [0] * n]
    for I in support[1:]:
        v = [0] * nv
        for i in I:
            v[i] += 1
        for i in support[0]:
            v[i] -= 1
        vecs.append(v)
    rk, idx = _lattice_rank_index(vecs, nv)
    rep = StabilizerReport(m, n, q, len(support), len(support) == comb(nv, m), rk, idx, strategy)
    if strategy == "enumerate":
        if (q - 1) ** n > budget:
            raise BudgetExceeded(f"(q-1)^n = {(q - 1) ** n} exceeds budget {budget}")
        count = 0
        for tail in product(range(1, q), repeat=n):
            a = (1, *tail)
            vals = set()
            for I in support:
                v = 1
                for i in I:
                    v = v * a[i] % q
                vals.add(v)
            count += len(vals) == 1
        rep.fq_points = count
    elif strategy != "lattice":
        raise ValueError(f"unknown strategy {strategy}")
    return rep
