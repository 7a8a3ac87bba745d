"""Vanishing certificates for the two hypotheses of Flenner's Torelli criterion.

X is a smooth complete intersection of type (d_1..d_c) in P^r with
dim X = N = r - c.  With G = sum O_X(-d_i), F = Omega^1_P|_X and
omega_X = O_X(kappa), kappa = sum d_i - r - 1:

(ii)  H^{j+1}(X, Sym^j G (x) wedge^{N-1-j} F (x) omega^{-1}) = 0 for 0 <= j <= N-2.
      Sym^j G splits into O_X(-e.d) over exponent vectors |e| = j, so every
      term is some H^b(X, Omega^a_P(l)|_X), which the Koszul resolution of O_X
      bounds by the spots H^{b+k}(P^r, Omega^a(l - s)), s a sum of k degrees.
(i)   H^0(D_{N-p} G* (x) omega) (x) H^0(D_{p-1} G* (x) omega) -> H^0(D_{N-1} G* (x) omega^2)
      is onto.  D_k G* splits into O_X(e.d), |e| = k, and the divided power
      product multiplies pieces with coefficient prod_i C(alpha_i+beta_i, alpha_i).

Everything here is one-sided: "certified" means every input spot vanishes by
Bott's theorem; anything else is "unknown", never a claim of nonvanishing.
Records carry dim_x (the N above) and ambient (the r) as separate fields.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from . import linalg
from .combinat import CIType, hilbert_function
from .poly import PrimeField, monomials


@dataclass(frozen=True)
class CohomologySpot:
    r: int
    a: int
    b: int
    l: int

    def __post_init__(self) -> None:
        if not (0 <= self.a <= self.r and 0 <= self.b <= self.r):
            raise ValueError(f"need 0 <= a, b <= r, got {self}")

    def serre_dual(self) -> "CohomologySpot":
        return CohomologySpot(self.r, self.r - self.a, self.r - self.b, -self.l)


def bott_case(spot: CohomologySpot) -> str | None:
    """Name of the nonvanishing family the spot falls in, or None."""
    r, a, b, l = spot.r, spot.a, spot.b, spot.l
    if b == a and l == 0:
        return "b=a,l=0"
    if b == 0 and l > a:
        return "b=0,l>a"
    if b == r and l < a - r:
        return "b=r,l<a-r"
    return None


def bott_vanishes(spot: CohomologySpot) -> bool:
    return bott_case(spot) is None


@dataclass(frozen=True)
class SpotCheck:
    k: int
    subset: tuple[int, ...]
    spot: CohomologySpot | None  # None when b + k > r
    case: str | None


@dataclass
class VanishingResult:
    certified: bool
    trace: list[SpotCheck]

    @property
    def status(self) -> str:
        return "certified" if self.certified else "unknown"

    @property
    def blockers(self) -> list[SpotCheck]:
        return [s for s in self.trace if s.case is not None]


def restricted_vanishing_certified(r: int, degrees, a: int, b: int, l: int) -> VanishingResult:
    """Sufficient test for H^b(X, Omega^a_P(l)|_X) = 0 via the Koszul complex."""
    degrees = tuple(degrees)
    trace = []
    for k in range(len(degrees) + 1):
        for sub in combinations(range(len(degrees)), k):
            if b + k > r:
                trace.append(SpotCheck(k, sub, None, None))
                continue
            spot = CohomologySpot(r, a, b + k, l - sum(degrees[i] for i in sub))
            trace.append(SpotCheck(k, sub, spot, bott_case(spot)))
    return VanishingResult(all(s.case is None for s in trace), trace)


@dataclass(frozen=True)
class FlennerCase:
    ci: CIType
    p: int = 1

    def __post_init__(self) -> None:
        if self.dim_x < 1:
            raise ValueError("need dim X >= 1")
        if not 1 <= self.p <= self.dim_x:
            raise ValueError(f"p={self.p} must lie in [1, dim X={self.dim_x}]")

    @property
    def ambient(self) -> int:
        return self.ci.n

    @property
    def dim_x(self) -> int:
        return self.ci.n - self.ci.c

    @property
    def kappa(self) -> int:
        """omega_X = O_X(kappa)."""
        return sum(self.ci.degrees) - self.ambient - 1


def _exponents(c: int, total: int):
    if c == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _exponents(c - 1, total - first):
            yield (first, *rest)


@dataclass
class TermCheck:
    j: int
    e: tuple[int, ...]
    a: int
    b: int
    twist: int
    result: VanishingResult


@dataclass
class ConditionII:
    case: FlennerCase
    terms: list[TermCheck]

    @property
    def certified(self) -> bool:
        return all(t.result.certified for t in self.terms)

    @property
    def status(self) -> str:
        return "certified" if self.certified else "unknown"

    def failing_terms(self) -> list[TermCheck]:
        return [t for t in self.terms if not t.result.certified]


def condition_ii(case: FlennerCase) -> ConditionII:
    """Term-by-term certificate for hypothesis (ii); it does not depend on p."""
    ci, r, N = case.ci, case.ambient, case.dim_x
    anti = -case.kappa
    terms = []
    for j in range(0, N - 1):
        a, b = N - 1 - j, j + 1
        for e in _exponents(ci.c, j):
            twist = anti - sum(x * d for x, d in zip(e, ci.degrees))
            terms.append(TermCheck(j, e, a, b, twist, restricted_vanishing_certified(r, ci.degrees, a, b, twist)))
    return ConditionII(case, terms)


# -- condition (i) -----------------------------------------------------------------


@dataclass
class PieceCheck:
    gamma: tuple[int, ...]
    degree: int
    target_dim: int
    image_dim: int | None
    splits: list  # (alpha, beta, coefficient mod q, u, v)

    @property
    def covered(self) -> bool:
        return self.target_dim == 0 or self.image_dim == self.target_dim


@dataclass
class ConditionI:
    case: FlennerCase
    q: int
    route: str  # "matrix" or "shadow"
    seed: int | None
    pieces: list[PieceCheck]
    note: str = ""

    @property
    def target_dim(self) -> int:
        return sum(pc.target_dim for pc in self.pieces)

    @property
    def status(self) -> str:
        if self.target_dim == 0:
            return "degenerate"
        return "surjective" if all(pc.covered for pc in self.pieces) else "not-surjective"


def _divided_coeff(alpha, beta, q: int) -> int:
    out = 1
    for x, y in zip(alpha, beta):
        out = out * comb(x + y, x) % q
    return out


def _split_table(case: FlennerCase, q: int):
    ci, N, p, kap = case.ci, case.dim_x, case.p, case.kappa
    degs = ci.degrees
    dot = lambda e: sum(x * d for x, d in zip(e, degs))
    table = []
    for gamma in _exponents(ci.c, N - 1):
        splits = []
        for alpha in _exponents(ci.c, N - p):
            beta = tuple(g - x for g, x in zip(gamma, alpha))
            if min(beta) < 0:
                continue
            splits.append((alpha, beta, _divided_coeff(alpha, beta, q), dot(alpha) + kap, dot(beta) + kap))
        table.append((gamma, dot(gamma) + 2 * kap, splits))
    return table


def condition_i_shadow(case: FlennerCase, q: int = 101) -> ConditionI:
    """Decide (i) from degrees alone.

    Products S_u x S_v -> S_{u+v} are onto for u, v >= 0, so a target piece is
    covered exactly when some split has both degrees >= 0 and a divided-power
    coefficient that is nonzero mod q.
    """
    ci = case.ci
    pieces = []
    for gamma, m, splits in _split_table(case, q):
        target = hilbert_function(ci.n, ci.degrees, m)
        ok = any(cf and u >= 0 and v >= 0 for _, _, cf, u, v in splits)
        pieces.append(PieceCheck(gamma, m, target, target if ok else 0, splits))
    return ConditionI(case, q, "shadow", None, pieces)


def _standard_monomials(F, d: int, q: int) -> list[tuple[int, ...]]:
    """Monomials outside the leading terms of I_d: a basis of (S/I)_d."""
    nv = F[0].nvars
    basis = monomials(nv, d)
    if d < 0:
        return []
    index = {e: i for i, e in enumerate(basis)}
    from .varieties import ideal_rows

    rows = ideal_rows(F, d, index)
    if not rows:
        return basis
    _, piv = linalg.rref(np.array(rows), q)
    pivset = set(piv)
    return [e for i, e in enumerate(basis) if i not in pivset]


def condition_i(case: FlennerCase, field_: PrimeField | None = None, seed: int = 0,
                budget: int = 800, F=None) -> ConditionI:
    """Decide (i) by rank on an explicit member over F_q.

    Each target piece is (S/I)_m; its image is spanned by products of standard
    monomials from (S/I)_u and (S/I)_v over the splits with a nonzero
    coefficient.  The image dimension is rank(I_m + products) - rank(I_m).
    If some degree-m monomial space exceeds ``budget`` columns the shadow
    route is used instead and the report says so.
    """
    from .varieties import generic_member, ideal_rows

    field_ = field_ or PrimeField(101)
    q, ci = field_.q, case.ci
    table = _split_table(case, q)
    nv = ci.n + 1
    if any(comb(nv - 1 + m, nv - 1) > budget for _, m, _ in table if m >= 0):
        rep = condition_i_shadow(case, q)
        rep.note = f"over budget ({budget} columns); degree shadow used"
        return rep
    if F is None:
        F = generic_member(ci, field_, seed)
    std_cache: dict[int, list] = {}

    def std(d):
        if d not in std_cache:
            std_cache[d] = _standard_monomials(F, d, q) if d >= 0 else []
        return std_cache[d]

    pieces = []
    done: dict[tuple, tuple[int, int]] = {}
    for gamma, m, splits in table:
        usable = tuple(sorted({(u, v) for _, _, cf, u, v in splits if cf and u >= 0 and v >= 0}))
        key = (m, usable)
        if key not in done:
            if m < 0:
                done[key] = (0, 0)
            else:
                basis = monomials(nv, m)
                index = {e: i for i, e in enumerate(basis)}
                irows = ideal_rows(F, m, index)
                r0 = linalg.rank(np.array(irows), q) if irows else 0
                prods = set()
                for u, v in usable:
                    for x in std(u):
                        for y in std(v):
                            prods.add(tuple(s + t for s, t in zip(x, y)))
                # products are unit vectors, so rank(I + E_P) = |P| + rank(I off P)
                rest = [index[e] for e in basis if e not in prods]
                r1 = len(prods)
                if irows and rest:
                    r1 += linalg.rank(np.array(irows)[:, rest], q)
                done[key] = (len(basis) - r0, r1 - r0)
        target, image = done[key]
        pieces.append(PieceCheck(gamma, m, target, image, splits))
    return ConditionI(case, q, "matrix", seed, pieces)


# -- exception list and sweep ---------------------------------------------------------


def known_exception(ci: CIType) -> str | None:
    """Known types where (i) or (ii) is not expected to certify."""
    degs, N = ci.degrees, ci.n - ci.c
    if degs == (2,):
        return "quadric"
    if degs == (2, 2):
        return "(2,2)"
    if degs == (2, 3) and N % 2 == 0:
        return "even-dimensional (2,3)"
    if degs == (2, 2, 2) and N % 2 == 0:
        return "even-dimensional (2,2,2)"
    if degs == (3,) and ci.n == 5:
        return "cubic fourfold"
    if degs == (4,) and ci.n == 3:
        return "quartic K3"
    return None


def range_caveat(ci: CIType) -> str | None:
    """Types excluded wherever the Torelli statement is applied: the cubic surface."""
    if ci.n == 3 and ci.degrees == (3,):
        return "cubic surface, excluded as (n,d) = (3,3)"
    return None


@dataclass
class TorelliRecord:
    ci: CIType
    dim_x: int
    ambient: int
    ii: ConditionII
    i_by_p: dict = field(default_factory=dict)

    @property
    def good_p(self) -> list[int]:
        """p for which (i) is surjective on a nonzero target."""
        return [p for p, rep in sorted(self.i_by_p.items()) if rep.status == "surjective"]

    @property
    def status(self) -> str:
        return "certified" if self.ii.certified and self.good_p else "flagged"

    @property
    def exception(self) -> str | None:
        return known_exception(self.ci)

    @property
    def caveat(self) -> str | None:
        return range_caveat(self.ci)

    @property
    def reason(self) -> str:
        if self.status == "certified":
            return ""
        parts = []
        if not self.ii.certified:
            t = self.ii.failing_terms()[0]
            s = t.result.blockers[0]
            parts.append(f"(ii) j={t.j} e={t.e}: H^{s.spot.b}(P^{s.spot.r}, Omega^{s.spot.a}({s.spot.l})) [{s.case}]")
        if not self.good_p:
            st = sorted({rep.status for rep in self.i_by_p.values()})
            parts.append(f"(i) {'/'.join(st)} for every p")
        return "; ".join(parts)


def torelli_types(max_ambient: int, max_degree: int = 6, min_dim: int = 2):
    from itertools import combinations_with_replacement

    for r in range(2, max_ambient + 1):
        for c in range(1, r - min_dim + 1):
            for degs in combinations_with_replacement(range(2, max_degree + 1), c):
                yield CIType(r, degs)


@dataclass
class TorelliSweep:
    records: dict

    def flagged(self) -> list[CIType]:
        return sorted(ci for ci, rec in self.records.items() if rec.status == "flagged")

    def certified(self) -> list[CIType]:
        return sorted(ci for ci, rec in self.records.items() if rec.status == "certified")

    def extra_flags(self) -> list[CIType]:
        return [ci for ci in self.flagged() if self.records[ci].exception is None]

    def missed_exceptions(self) -> list[CIType]:
        return [ci for ci, rec in sorted(self.records.items()) if rec.exception and rec.status != "flagged"]

    def uncertified_outside_list(self) -> list[CIType]:
        """Types off the exception list that (ii) fails to certify."""
        return [ci for ci, rec in sorted(self.records.items()) if rec.exception is None and not rec.ii.certified]


def torelli_sweep(max_ambient: int, max_degree: int = 6, q: int = 101, budget: int = 800,
                  seed: int = 0, matrix: bool = True, bound: int = 10) -> TorelliSweep:
    """Both conditions over every type with ambient <= max_ambient and dim X >= 2."""
    if max_ambient > bound:
        raise ValueError(f"max_ambient={max_ambient} exceeds the configured bound {bound}")
    field_ = PrimeField(q)
    records = {}
    for ci in torelli_types(max_ambient, max_degree):
        rec = TorelliRecord(ci, ci.n - ci.c, ci.n, condition_ii(FlennerCase(ci, 1)))
        for p in range(1, rec.dim_x + 1):
            case = FlennerCase(ci, p)
            rec.i_by_p[p] = condition_i(case, field_, seed, budget) if matrix else condition_i_shadow(case, q)
        records[ci] = rec
    return TorelliSweep(records)


def _deeper(old: CohomologySpot, new: CohomologySpot) -> bool:
    """new lies further from every Bott nonvanishing family than old."""
    if (old.r, old.a, old.b) != (new.r, new.a, new.b):
        return False
    if old.b == old.a:
        return abs(new.l) > abs(old.l)
    if old.b == 0:
        return new.l < old.l
    if old.b == old.r:
        return new.l > old.l
    return True


def monotonicity_violations(sweep: TorelliSweep) -> tuple[int, list]:
    """Raise all degrees by one in certified Fano types and compare term by term.

    A term certified before whose every spot moved deeper must stay
    certified.  Returns (terms compared, violations).
    """
    compared, bad = 0, []
    recs = sweep.records
    for ci, rec in recs.items():
        if sum(ci.degrees) > ci.n or not rec.ii.certified:
            continue
        up = CIType(ci.n, tuple(d + 1 for d in ci.degrees))
        if up not in recs:
            continue
        new_terms = {(t.j, t.e): t for t in recs[up].ii.terms}
        for t in rec.ii.terms:
            u = new_terms.get((t.j, t.e))
            if u is None:
                continue
            pairs = list(zip(t.result.trace, u.result.trace))
            if not all((s.spot is None and v.spot is None) or (s.spot and v.spot and _deeper(s.spot, v.spot))
                       for s, v in pairs):
                continue
            compared += 1
            if not u.result.certified:
                bad.append((ci, up, t.j, t.e))
    return compared, bad
