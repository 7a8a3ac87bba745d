"""Prime fields and sparse homogeneous polynomials over them."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .eigencalc import is_prime


@dataclass(frozen=True)
class PrimeField:
    q: int

    def __post_init__(self) -> None:
        if not is_prime(self.q):
            raise ValueError(f"q={self.q} is not prime")

    def has_root_of_unity(self, k: int) -> bool:
        return (self.q - 1) % k == 0

    def primitive_root_of_unity(self, k: int) -> int:
        """An element of exact multiplicative order k."""
        if not self.has_root_of_unity(k):
            raise ValueError(f"F_{self.q} has no primitive {k}-th root of unity")
        g = self.generator()
        return pow(g, (self.q - 1) // k, self.q)

    def generator(self) -> int:
        q = self.q
        if q == 2:
            return 1
        factors = _prime_factors(q - 1)
        for g in range(2, q):
            if all(pow(g, (q - 1) // f, q) != 1 for f in factors):
                return g
        raise AssertionError("unreachable")

    def sqrt(self, x: int) -> int | None:
        x %= self.q
        for y in range(self.q):
            if y * y % self.q == x:
                return y
        return None

    def inv(self, x: int) -> int:
        x %= self.q
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(x, self.q - 2, self.q)


def _prime_factors(m: int) -> list[int]:
    out, f = [], 2
    while f * f <= m:
        if m % f == 0:
            out.append(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        out.append(m)
    return out


def prime_with_roots(k: int, at_least: int) -> int:
    """Smallest prime q >= at_least with k | q - 1."""
    q = max(at_least, 3)
    while not (is_prime(q) and (q - 1) % k == 0):
        q += 1
    return q


def monomials(nvars: int, d: int) -> list[tuple[int, ...]]:
    """Exponent vectors of degree d in graded-lex (descending) order."""
    if d < 0:
        return []
    if nvars == 0:
        return [()] if d == 0 else []
    if nvars == 1:
        return [(d,)]
    out = []
    for first in range(d, -1, -1):
        for rest in monomials(nvars - 1, d - first):
            out.append((first, *rest))
    return out


class HPoly:
    """Homogeneous polynomial in z_0..z_n over F_q, stored sparsely."""

    __slots__ = ("nvars", "q", "degree", "terms")

    def __init__(self, nvars: int, q: int, terms: Mapping[tuple[int, ...], int], degree: int | None = None):
        clean: dict[tuple[int, ...], int] = {}
        for e, c in terms.items():
            e = tuple(int(x) for x in e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
            c = int(c) % q
            if c:
                clean[e] = (clean.get(e, 0) + c) % q
                if not clean[e]:
                    del clean[e]
        degs = {sum(e) for e in clean}
        if len(degs) > 1:
            raise ValueError(f"not homogeneous: degrees {sorted(degs)}")
        if degs:
            (deg,) = degs
            if degree is not None and degree != deg:
                raise ValueError("declared degree disagrees with terms")
        else:
            deg = 0 if degree is None else degree
        self.nvars = nvars
        self.q = q
        self.degree = deg
        self.terms = clean

    # construction helpers
    @classmethod
    def zero(cls, nvars: int, q: int, degree: int = 0) -> "HPoly":
        return cls(nvars, q, {}, degree)

    @classmethod
    def monomial(cls, exps: Iterable[int], q: int, coeff: int = 1) -> "HPoly":
        exps = tuple(exps)
        return cls(len(exps), q, {exps: coeff})

    @classmethod
    def variable(cls, i: int, nvars: int, q: int) -> "HPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, q, {tuple(e): 1})

    @property
    def n(self) -> int:
        return self.nvars - 1

    def is_zero(self) -> bool:
        return not self.terms

    def _same(self, other: "HPoly") -> None:
        if self.nvars != other.nvars or self.q != other.q:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other: "HPoly") -> "HPoly":
        self._same(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return HPoly(self.nvars, self.q, t)

    def __neg__(self) -> "HPoly":
        return HPoly(self.nvars, self.q, {e: -c for e, c in self.terms.items()}, self.degree)

    def __sub__(self, other: "HPoly") -> "HPoly":
        return self + (-other)

    def scale(self, s: int) -> "HPoly":
        return HPoly(self.nvars, self.q, {e: c * s for e, c in self.terms.items()}, self.degree)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._same(other)
        t: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = (t.get(e, 0) + c1 * c2) % self.q
        return HPoly(self.nvars, self.q, t, self.degree + other.degree)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "HPoly":
        out = HPoly.monomial((0,) * self.nvars, self.q)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, HPoly):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self.q == other.q
            and self.terms == other.terms
            and (self.degree == other.degree or not self.terms)
        )

    def __hash__(self) -> int:
        return hash((self.nvars, self.q, frozenset(self.terms.items())))

    def derivative(self, j: int) -> "HPoly":
        """Formal partial derivative; the coefficient picks up the exponent mod q."""
        t = {}
        for e, c in self.terms.items():
            if e[j]:
                f = list(e)
                f[j] -= 1
                t[tuple(f)] = c * e[j]
        return HPoly(self.nvars, self.q, t, max(self.degree - 1, 0))

    def __call__(self, point) -> int:
        q = self.q
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * pow(int(x), k, q) % q
            total += v
        return total % q

    def evaluate_many(self, P: np.ndarray) -> np.ndarray:
        """Values at each row of P (shape (N, nvars)) mod q."""
        q = self.q
        P = np.asarray(P, dtype=np.int64) % q
        out = np.zeros(P.shape[0], dtype=np.int64)
        if not self.terms:
            return out
        maxdeg = max(max(e) for e in self.terms)
        powers = [np.ones_like(P)]
        for _ in range(maxdeg):
            powers.append(powers[-1] * P % q)
        for e, c in self.terms.items():
            v = np.full(P.shape[0], c, dtype=np.int64)
            for j, k in enumerate(e):
                if k:
                    v = v * powers[k][:, j] % q
            out = (out + v) % q
        return out

    def substitute(self, M) -> "HPoly":
        """Pull back along the linear map z_i -> sum_j M[i][j] z_j."""
        q, nv = self.q, self.nvars
        lin = [
            HPoly(nv, q, {tuple(1 if k == j else 0 for k in range(nv)): int(M[i][j]) for j in range(nv)}, 1)
            for i in range(nv)
        ]
        out = HPoly.zero(nv, q, self.degree)
        for e, c in self.terms.items():
            term = HPoly.monomial((0,) * nv, q, c)
            for i, k in enumerate(e):
                for _ in range(k):
                    term = term * lin[i]
            out = out + term
        return HPoly(nv, q, out.terms, self.degree)

    def coefficient_vector(self, basis_index: Mapping[tuple[int, ...], int]) -> np.ndarray:
        v = np.zeros(len(basis_index), dtype=np.int64)
        for e, c in self.terms.items():
            v[basis_index[e]] = c
        return v

    def to_text(self) -> str:
        """Canonical form coeff*z0^a0*... with terms in graded-lex order."""
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            factors = [str(self.terms[e])]
            factors += [f"z{i}^{k}" for i, k in enumerate(e) if k]
            parts.append("*".join(factors))
        return " + ".join(parts)

    __str__ = to_text

    def __repr__(self) -> str:
        return f"HPoly(F_{self.q}, n={self.n}: {self.to_text()})"

    @classmethod
    def parse(cls, text: str, nvars: int, q: int) -> "HPoly":
        """Inverse of ``to_text`` (also accepts bare variables and '-')."""
        text = text.replace(" ", "")
        if text in ("", "0"):
            return cls.zero(nvars, q)
        terms: dict[tuple[int, ...], int] = {}
        for sign, body in re.findall(r"([+-]?)([^+-]+)", text):
            coeff = -1 if sign == "-" else 1
            e = [0] * nvars
            for factor in body.split("*"):
                m = re.fullmatch(r"z(\d+)(?:\^(\d+))?", factor)
                if m:
                    e[int(m.group(1))] += int(m.group(2) or 1)
                else:
                    coeff *= int(factor)
            key = tuple(e)
            terms[key] = terms.get(key, 0) + coeff
        return cls(nvars, q, terms)


def jacobian_matrix(F: list[HPoly]) -> list[list[HPoly]]:
    """The c x (n+1) matrix of formal partial derivatives."""
    if not F:
        return []
    nv = F[0].nvars
    for f in F:
        if f.nvars != nv or f.q != F[0].q:
            raise ValueError("all forms must share variables and field")
    return [[f.derivative(j) for j in range(nv)] for f in F]
