"""Exact binomial arithmetic and the section-space dimensions used by the
eigenspace case analysis.

Everything here is integer or ``fractions.Fraction`` valued.  There is no
floating point in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import NamedTuple


def binom(a: int, b: int) -> int:
    """C(a, b), with C(a, b) = 0 whenever b < 0 or a < b.

    Negative upper index also gives 0; this is the convention needed when
    twists in alternating Koszul sums drop below zero.
    """
    if b < 0 or a < b:
        return 0
    return comb(a, b)


def dim_forms(n: int, d: int) -> int:
    """Number of degree-d monomials in n+1 variables."""
    if n < 0 or d < 0:
        raise ValueError("dim_forms needs n >= 0 and d >= 0")
    return comb(n + d, d)


@dataclass(frozen=True, order=True)
class CIType:
    """Type (n; d_1 <= ... <= d_c) of a complete intersection in P^n."""

    n: int
    degrees: tuple[int, ...]

    def __post_init__(self) -> None:
        degs = tuple(sorted(int(d) for d in self.degrees))
        object.__setattr__(self, "degrees", degs)
        if not degs:
            raise ValueError("a complete intersection needs at least one degree")
        if degs[0] < 2:
            raise ValueError(f"degrees must be >= 2, got {degs}")
        if len(degs) >= self.n:
            raise ValueError(f"need c < n, got n={self.n}, c={len(degs)}")

    @property
    def c(self) -> int:
        return len(self.degrees)

    @property
    def dim(self) -> int:
        return self.n - self.c

    @property
    def degree_sum(self) -> int:
        return sum(self.degrees)

    @property
    def all_quadrics(self) -> bool:
        return all(d == 2 for d in self.degrees)

    def key(self) -> tuple[int, ...]:
        """The flat tuple (n, d_1, ..., d_c) used in exception lists."""
        return (self.n, *self.degrees)

    def __str__(self) -> str:
        return "(" + ",".join(str(x) for x in self.key()) + ")"

    @classmethod
    def from_key(cls, key: tuple[int, ...] | list[int]) -> "CIType":
        return cls(key[0], tuple(key[1:]))


def degree_pattern(ci: CIType) -> str:
    """Classify the degree list into the three shapes the case analysis uses.

    Returns ``equal-degrees``, ``two-quadrics`` (2,2,d,...,d with d >= 3),
    ``one-quadric`` (2,d,...,d with d >= 3) or ``other``.
    """
    degs = ci.degrees
    top = degs[-1]
    if all(d == top for d in degs):
        return "equal-degrees"
    if top >= 3 and len(degs) >= 3 and degs[0] == degs[1] == 2 and all(d == top for d in degs[2:]):
        return "two-quadrics"
    if top >= 3 and degs[0] == 2 and all(d == top for d in degs[1:]):
        return "one-quadric"
    return "other"


def h0_restricted(ci: CIType, d: int) -> int:
    """h^0(O_X(d)) for d one of the degrees of X, by the closed formulas.

    Three shapes are covered: all degrees equal, (2,2,d,...,d) and
    (2,d,...,d).  Other shapes are rejected.
    """
    if d not in ci.degrees:
        raise ValueError(f"d={d} is not among the degrees {ci.degrees}")
    n, c = ci.n, ci.c
    pattern = degree_pattern(ci)
    if pattern == "equal-degrees":
        return binom(n + d, d) - c
    if pattern == "two-quadrics":
        if d == 2:
            return binom(n + 2, 2) - 2
        return binom(n + d, n) - 2 * binom(n + d - 2, n) + binom(n + d - 4, n) - (c - 2)
    if pattern == "one-quadric":
        if d == 2:
            return binom(n + 2, 2) - 1
        return binom(n + d, n) - binom(n + d - 2, n) - (c - 1)
    raise ValueError(f"no closed formula for degree pattern {ci.degrees}")


def hilbert_function(n: int, degrees: tuple[int, ...] | list[int], m: int) -> int:
    """dim (S/I)_m for a complete intersection of the given degrees in P^n.

    Expands the numerator prod(1 - t^d_i) against 1/(1-t)^(n+1).  Used by the
    torelli module to size graded pieces before building any matrix.
    """
    if m < 0:
        return 0
    total = 0
    c = len(degrees)
    for k in range(c + 1):
        for idx in combinations(range(c), k):
            s = sum(degrees[i] for i in idx)
            total += (-1) ** k * binom(n + m - s, n)
    return total


class Inequality(NamedTuple):
    ident: str
    lhs: Fraction
    rhs: Fraction
    holds: bool


def _strict(ident: str, lhs, rhs) -> Inequality:
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    return Inequality(ident, lhs, rhs, lhs > rhs)


def _weak(ident: str, lhs, rhs) -> Inequality:
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    return Inequality(ident, lhs, rhs, lhs >= rhs)


def lemma24_bound(n: int, d: int, mu: int) -> Fraction:
    """Upper bound for max_w dim E_{d,w} when mu residues occur among n+1 weights."""
    if mu < 2:
        raise ValueError("the bound needs mu >= 2")
    if n < mu - 1:
        raise ValueError("need n >= mu - 1")
    total = Fraction(0)
    top = n + 1 - mu
    for k in range(top + 1):
        total += Fraction((mu - 1) ** k, mu ** (k + 1)) * binom(n + d - k, d)
    total += Fraction((mu - 1) ** top, mu ** (top + 1)) * binom(d + mu - 1, d + 1)
    return total


def elementary_inequalities(n: int, d: int) -> list[Inequality]:
    """Evaluate the purely binomial inequalities that close the case analysis.

    Identifiers:

    E126   (2/3)C(n+d-1,d-1) + (4/9)C(n+d-2,d-1) > 2C(n+d-2,n) + 2
    E116   (1/2)C(n+d-1,d-1) + (1/4)C(n+d-2,d-1) + (1/8)C(n+d-3,d-1) > 2C(n+d-2,n)
    E122   C(n+d,d) - bound(mu=2) >= the E116 left side
    E125   C(n+d,d) - bound(mu=3) >= the E126 left side
    E123   the one-quadric inequality at (b1, b2) = (1, 0), with the
           eigenspace dimension replaced by its mu=2 upper bound
    E112a/b/c  worst pair (a, b) with a + b <= n+1 for the three pairwise
           binomial inequalities bounding the Koszul correction terms

    For the E112 family the reported lhs/rhs belong to the pair with the
    smallest margin.
    """
    if n < 1 or d < 2:
        raise ValueError("need n >= 1 and d >= 2")
    C = binom
    out: list[Inequality] = []
    lhs126 = Fraction(2, 3) * C(n + d - 1, d - 1) + Fraction(4, 9) * C(n + d - 2, d - 1)
    out.append(_strict("E126", lhs126, 2 * C(n + d - 2, n) + 2))
    lhs116 = (
        Fraction(1, 2) * C(n + d - 1, d - 1)
        + Fraction(1, 4) * C(n + d - 2, d - 1)
        + Fraction(1, 8) * C(n + d - 3, d - 1)
    )
    out.append(_strict("E116", lhs116, 2 * C(n + d - 2, n)))
    out.append(_weak("E122", C(n + d, d) - lemma24_bound(n, d, 2), lhs116))
    if n >= 2:
        out.append(_weak("E125", C(n + d, d) - lemma24_bound(n, d, 3), lhs126))
    bound2 = lemma24_bound(n, d, 2)
    out.append(
        _strict(
            "E123",
            Fraction(1, 2) * C(n + d, n) - C(n + d - 2, n),
            Fraction(1, 2) * bound2,
        )
    )
    out.extend(_e112_family(n, d))
    return out


def _e112_family(n: int, d: int) -> list[Inequality]:
    C = binom
    fams = {
        # C(a+d-2,d-1) b + C(b+d-2,d-1) a >= 2ab
        "E112a": lambda a, b: (C(a + d - 2, d - 1) * b + C(b + d - 2, d - 1) * a, 2 * a * b),
        # C(a+d-2,d-1) b + C(b+d-1,d) >= 2ab, a >= b
        "E112b": lambda a, b: (C(a + d - 2, d - 1) * b + C(b + d - 1, d), 2 * a * b),
        # min(C(a+d-1,d), C(a+d-2,d-1) b) + C(b+d-1,d) >= 2ab, a >= b
        "E112c": lambda a, b: (
            min(C(a + d - 1, d), C(a + d - 2, d - 1) * b) + C(b + d - 1, d),
            2 * a * b,
        ),
    }
    out = []
    pairs = [(a, b) for a, b in combinations_with_replacement(range(1, n + 1), 2) if a + b <= n + 1]
    pairs = [(max(a, b), min(a, b)) for a, b in pairs]
    for ident, fn in fams.items():
        if not pairs:
            continue
        worst = min(pairs, key=lambda ab: fn(*ab)[0] - fn(*ab)[1])
        lhs, rhs = fn(*worst)
        out.append(_weak(ident, lhs, rhs))
    return out
