"""Eigenspace dimensions for a diagonal automorphism of order p.

A diagonal sigma = diag(eta^{lambda_0}, ..., eta^{lambda_n}) with eta a
primitive p-th root of unity acts on the monomial z^m by eta^{sum lambda_i m_i}.
So dim E_{d,w} is the number of exponent vectors m with |m| = d and
sum lambda_i m_i = w mod p.  We use this covariant convention throughout; the
contravariant one only negates w.

Dimensions come from a dynamic program over variables and residues.  The
batched variant evaluates many weight vectors at once with numpy and drives
the exhaustive sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from .combinat import binom, lemma24_bound


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True


def primes_upto(m: int) -> list[int]:
    return [p for p in range(2, m + 1) if is_prime(p)]


@dataclass(frozen=True)
class EigenSpec:
    """An order-p diagonal automorphism given by per-variable residues."""

    p: int
    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        w = tuple(int(x) % self.p for x in self.weights)
        object.__setattr__(self, "weights", w)
        if len(w) < 1:
            raise ValueError("need at least one variable")

    @classmethod
    def from_multiplicities(cls, p: int, a: tuple[int, ...] | list[int]) -> "EigenSpec":
        """Spec with a_j variables of residue j (a may be shorter than p)."""
        weights = [j for j, aj in enumerate(a) for _ in range(aj)]
        return cls(p, tuple(weights))

    @property
    def n(self) -> int:
        return len(self.weights) - 1

    @property
    def a(self) -> tuple[int, ...]:
        counts = [0] * self.p
        for w in self.weights:
            counts[w] += 1
        return tuple(counts)

    @property
    def mu(self) -> int:
        return sum(1 for x in self.a if x > 0)

    @property
    def sum_sq(self) -> int:
        return sum(x * x for x in self.a)

    def normalized(self) -> "EigenSpec":
        """Shift residues so that the largest multiplicity sits at residue 0.

        Ties go to the smallest residue.
        """
        a = self.a
        j0 = max(range(self.p), key=lambda j: (a[j], -j))
        return EigenSpec(self.p, tuple((w - j0) % self.p for w in self.weights))

    def __str__(self) -> str:
        return f"p={self.p} a={self.a}"


def eigenspace_dims(spec: EigenSpec, d: int) -> tuple[int, ...]:
    """(dim E_{d,0}, ..., dim E_{d,p-1}) by dynamic programming.

    Variables sharing a residue j are grouped: there are C(a_j+k-1, k)
    monomials of degree k in them, all of weight j*k.
    """
    if d < 0:
        raise ValueError("d must be >= 0")
    p = spec.p
    table = [[0] * p for _ in range(d + 1)]
    table[0][0] = 1
    for j, aj in enumerate(spec.a):
        if aj == 0:
            continue
        new = [[0] * p for _ in range(d + 1)]
        for deg in range(d + 1):
            row = table[deg]
            for k in range(d - deg + 1):
                cnt = binom(aj + k - 1, k)
                shift = (j * k) % p
                target = new[deg + k]
                for w in range(p):
                    if row[w]:
                        target[(w + shift) % p] += cnt * row[w]
        table = new
    return tuple(table[d])


def eigenspace_dims_bruteforce(spec: EigenSpec, d: int) -> tuple[int, ...]:
    """Oracle: enumerate every exponent vector of total degree d."""
    p = spec.p
    out = [0] * p
    for m in _exponents(spec.n + 1, d):
        out[sum(l * e for l, e in zip(spec.weights, m)) % p] += 1
    return tuple(out)


def _exponents(nvars: int, d: int):
    if nvars == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _exponents(nvars - 1, d - first):
            yield (first, *rest)


# -- bound checks ------------------------------------------------------------


@dataclass
class LemmaReport:
    spec: EigenSpec
    d: int
    status: str  # "pass", "fail", "out-of-range"
    detail: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.status == "pass"


def check_lemma22(spec: EigenSpec, d: int) -> LemmaReport:
    """Codimension of every eigenspace against (n+1)^2 - sum a_j^2.

    For d, n >= 3 the inequality is strict; for d = 2 it is the halved weak
    form.  Other (n, d) are reported as out of range.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    n = spec.n
    total = binom(n + d, d)
    defect = (n + 1) ** 2 - spec.sum_sq
    dims = eigenspace_dims(spec, d)
    if d == 2:
        rhs = Fraction(defect, 2)
        margins = [Fraction(total - x) - rhs for x in dims]
        ok = all(m >= 0 for m in margins)
        kind = "weak-half"
    elif n >= 3:
        rhs = Fraction(defect)
        margins = [Fraction(total - x) - rhs for x in dims]
        ok = all(m > 0 for m in margins)
        kind = "strict"
    else:
        return LemmaReport(spec, d, "out-of-range", {"reason": f"n={n} < 3 with d={d} >= 3"})
    return LemmaReport(
        spec,
        d,
        "pass" if ok else "fail",
        {"kind": kind, "dims": dims, "total": total, "rhs": rhs, "margins": margins},
    )


def max_dim(spec: EigenSpec, d: int) -> int:
    return max(eigenspace_dims(spec, d))


def check_lemma24(spec: EigenSpec, d: int) -> LemmaReport:
    """max_w dim E_{d,w} against the rational bound, plus the one-step recursion.

    The recursion compares mu * e(a) with C(n+d,d) + (mu-1) * e(a'), where a'
    removes one variable from the (normalized) largest residue class.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    mu = spec.mu
    if mu < 2:
        raise ValueError("the identity (mu < 2) is excluded")
    n = spec.n
    e = max_dim(spec, d)
    bound = lemma24_bound(n, d, mu)
    spec0 = spec.normalized()
    a = list(spec0.a)
    a[0] -= 1
    reduced = EigenSpec.from_multiplicities(spec.p, a)
    e_red = max_dim(reduced, d)
    rec_lhs = mu * e
    rec_rhs = binom(n + d, d) + (mu - 1) * e_red
    ok_bound = e <= bound
    ok_rec = rec_lhs <= rec_rhs
    return LemmaReport(
        spec,
        d,
        "pass" if (ok_bound and ok_rec) else "fail",
        {
            "max_dim": e,
            "bound": bound,
            "bound_holds": ok_bound,
            "recursion_lhs": Fraction(rec_lhs, mu),
            "recursion_rhs": Fraction(rec_rhs, mu),
            "reduced_max_dim": e_red,
            "recursion_holds": ok_rec,
        },
    )


# -- batched sweeps ------------------------------------------------------------


def canonical_multiplicities(p: int, nvars: int, min_mu: int = 2):
    """Multiplicity vectors up to the affine group of Z/p.

    Every orbit under w -> u*w + t (u a unit) meets the set with a_0 maximal
    and a_1 maximal among a_1..a_{p-1}; eigenspace tables of orbit members
    differ only by relabelling w, so sweeps over these vectors are exhaustive.
    """
    if p == 2:
        for a1 in range(1, nvars // 2 + 1):
            yield (nvars - a1, a1)
        return
    for a0 in range(1, nvars + 1):
        for a1 in range(1, min(a0, nvars - a0) + 1):
            rest = nvars - a0 - a1
            for tail in _bounded_compositions(rest, p - 2, a1):
                a = (a0, a1, *tail)
                if sum(1 for x in a if x) >= min_mu:
                    yield a


def _bounded_compositions(total: int, parts: int, cap: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    lo = max(0, total - cap * (parts - 1))
    for first in range(min(cap, total), lo - 1, -1):
        for rest in _bounded_compositions(total - first, parts - 1, cap):
            yield (first, *rest)


def batch_dims(p: int, A: np.ndarray, d_max: int) -> np.ndarray:
    """Eigenspace tables for many multiplicity vectors at once.

    A has shape (B, p).  Returns T of shape (B, d_max+1, p) with
    T[b, d, w] = dim E_{d,w} for the spec with multiplicities A[b].
    """
    A = np.asarray(A, dtype=np.int64)
    B = A.shape[0]
    T = np.zeros((B, d_max + 1, p), dtype=np.int64)
    T[:, 0, 0] = 1
    ks = np.arange(d_max + 1)
    for j in range(p):
        aj = A[:, j]
        # f[b, k] = C(a_j + k - 1, k)
        f = np.ones((B, d_max + 1), dtype=np.int64)
        for k in range(1, d_max + 1):
            f[:, k] = f[:, k - 1] * (aj + k - 1) // k
        f[aj == 0, 1:] = 0
        new = np.zeros_like(T)
        for deg in range(d_max + 1):
            acc = new[:, deg, :]
            for k in ks[: deg + 1]:
                src = T[:, deg - k, :]
                acc += f[:, k, None] * np.roll(src, (j * int(k)) % p, axis=1)
        T = new
    return T


@dataclass
class SweepSummary:
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def sweep_lemma22(n_range, p_max: int, d_range, include_d2: bool = True) -> SweepSummary:
    """Exhaustive check of the eigenspace codimension bound over canonical specs."""
    out = SweepSummary()
    d_list = sorted(set(d_range) | ({2} if include_d2 else set()))
    d_max = max(d_list)
    for p in primes_upto(p_max):
        for n in n_range:
            A = np.array(list(canonical_multiplicities(p, n + 1)), dtype=np.int64)
            if A.size == 0:
                continue
            T = batch_dims(p, A, d_max)
            defect = (n + 1) ** 2 - (A * A).sum(axis=1)
            for d in d_list:
                codim = binom(n + d, d) - T[:, d, :].max(axis=1)
                if d == 2:
                    bad = 2 * codim < defect
                elif n >= 3:
                    bad = codim <= defect
                else:
                    continue
                out.checked += len(A)
                for b in np.nonzero(bad)[0]:
                    out.violations.append((p, n, d, tuple(int(x) for x in A[b])))
    return out


def sweep_lemma24(n_range, p_max: int, d_range) -> SweepSummary:
    """Exhaustive check of the rational max-dimension bound and its recursion."""
    out = SweepSummary()
    d_list = sorted(set(d_range))
    d_max = max(d_list)
    for p in primes_upto(p_max):
        for n in n_range:
            A = np.array(list(canonical_multiplicities(p, n + 1)), dtype=np.int64)
            if A.size == 0:
                continue
            Ared = A.copy()
            Ared[:, 0] -= 1
            T = batch_dims(p, A, d_max)
            Tred = batch_dims(p, Ared, d_max)
            mus = (A > 0).sum(axis=1)
            for d in d_list:
                e = T[:, d, :].max(axis=1)
                e_red = Tred[:, d, :].max(axis=1)
                total = binom(n + d, d)
                for mu in np.unique(mus):
                    sel = np.nonzero(mus == mu)[0]
                    bound = lemma24_bound(n, d, int(mu))
                    for b in sel:
                        out.checked += 1
                        eb = int(e[b])
                        rec_ok = int(mu) * eb <= total + (int(mu) - 1) * int(e_red[b])
                        if eb > bound or not rec_ok:
                            out.violations.append(
                                (p, n, d, tuple(int(x) for x in A[b]), eb, bound, rec_ok)
                            )
    return out


def all_multiplicities(p: int, nvars: int):
    """Every multiplicity vector (a_0, ..., a_{p-1}) with sum nvars, unreduced."""
    for a in product(range(nvars + 1), repeat=p):
        if sum(a) == nvars:
            yield a
