"""The eigenspace case engine.

For a complete intersection type and an order-p diagonal automorphism sigma,
the reduced dimension inequalities say that Im J_X plus the eigenspaces of
the defining equations cannot fill H^0(O_X(d_1)) + ... , so sigma cannot act
trivially on coker J_X.  Three degree shapes are handled:

* equal degrees (d,...,d), c copies, split b1 + b2 = c::

      (n+1)^2 - sum a_j^2 + (b1-b2) dim E_{d,w} + 2 b1 b2 < b1 C(n+d,d)

* two quadrics then (d,...,d), split b1 + b2 = c-2::

      (n+1)^2 - sum a_j^2 + S_2 + (b1-b2) dim E_{d,w} + 2 b1 b2
          < 2 h^0(O_X(2)) + b1 (C(n+d,n) - 2 C(n+d-2,n) + C(n+d-4,n))

  where S_2 bounds dim E_{X,2,xi_1} + dim E_{X,2,xi_2}.  Restriction to X
  kills exactly the quadrics F_1, F_2 inside their own eigenspaces, so
  S_2 = dim E_{2,w1} + dim E_{2,w2} - 2 for w1 != w2 and 2 dim E_{2,w} - 4
  for w1 = w2; the engine takes the worst pair.

* one quadric then (d,...,d), split b1 + b2 = c-1::

      (n+1)^2/2 - sum a_j^2/2 + (b1-b2) dim E_{d,w} + 2 b1 b2
          < b1 (C(n+d,n) - C(n+d-2,n))

The reduction from the cokernel condition to these inequalities is taken as
given; the engine evaluates the inequalities exactly for every residue w and
every split.  Types of another shape are reduced to the longest prefix of
degrees, cut at a jump d_l < d_{l+1}, that has one of the three shapes: an
automorphism of X preserves the intersection of the lower-degree
hypersurfaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .combinat import CIType, binom, degree_pattern, h0_restricted
from .eigencalc import EigenSpec, eigenspace_dims


@dataclass(frozen=True)
class CaseCertificate:
    ci: CIType
    spec: EigenSpec
    case: str
    b1: int
    b2: int
    w: int
    lhs: Fraction
    rhs: Fraction
    worst_pair: tuple[int, int] | None = None

    @property
    def holds(self) -> bool:
        return self.lhs < self.rhs

    @property
    def margin(self) -> Fraction:
        return self.rhs - self.lhs


def _splits(total: int):
    for b2 in range(total // 2 + 1):
        yield total - b2, b2


def _check_spec(ci: CIType, spec: EigenSpec) -> None:
    if spec.n != ci.n:
        raise ValueError(f"spec has {spec.n + 1} variables, type lives in P^{ci.n}")
    if spec.mu < 2:
        raise ValueError("the identity (mu < 2) carries no information")


def certify_equal_degrees(ci: CIType, spec: EigenSpec) -> list[CaseCertificate]:
    if degree_pattern(ci) != "equal-degrees":
        raise ValueError(f"degrees {ci.degrees} are not all equal")
    d, c, n = ci.degrees[0], ci.c, ci.n
    if (c, d) == (2, 2):
        raise ValueError(
            "type (2,2) is the two-quadrics exception (Aut contains the sign changes); "
            "use pencil_automorphisms instead"
        )
    _check_spec(ci, spec)
    dims = eigenspace_dims(spec, d)
    defect = (n + 1) ** 2 - spec.sum_sq
    full = binom(n + d, d)
    out = []
    for w, dim in enumerate(dims):
        for b1, b2 in _splits(c):
            lhs = Fraction(defect + (b1 - b2) * dim + 2 * b1 * b2)
            out.append(CaseCertificate(ci, spec, "equal-degrees", b1, b2, w, lhs, Fraction(b1 * full)))
    return out


def _quadric_pair_term(spec: EigenSpec) -> tuple[int, tuple[int, int]]:
    dims2 = eigenspace_dims(spec, 2)
    best, pair = None, None
    p = spec.p
    for w1 in range(p):
        for w2 in range(w1, p):
            s = dims2[w1] + dims2[w2] - (4 if w1 == w2 else 2)
            if best is None or s > best:
                best, pair = s, (w1, w2)
    return best, pair


def certify_two_quadrics_case(ci: CIType, spec: EigenSpec) -> list[CaseCertificate]:
    if degree_pattern(ci) != "two-quadrics":
        raise ValueError(f"degrees {ci.degrees} do not have the shape (2,2,d,...,d), d >= 3")
    _check_spec(ci, spec)
    n, c, d = ci.n, ci.c, ci.degrees[-1]
    s2, pair = _quadric_pair_term(spec)
    dims = eigenspace_dims(spec, d)
    defect = (n + 1) ** 2 - spec.sum_sq
    h2 = h0_restricted(ci, 2)
    block = binom(n + d, n) - 2 * binom(n + d - 2, n) + binom(n + d - 4, n)
    out = []
    for w, dim in enumerate(dims):
        for b1, b2 in _splits(c - 2):
            lhs = Fraction(defect + s2 + (b1 - b2) * dim + 2 * b1 * b2)
            rhs = Fraction(2 * h2 + b1 * block)
            out.append(CaseCertificate(ci, spec, "two-quadrics", b1, b2, w, lhs, rhs, pair))
    return out


def certify_one_quadric_case(ci: CIType, spec: EigenSpec) -> list[CaseCertificate]:
    if degree_pattern(ci) != "one-quadric":
        raise ValueError(f"degrees {ci.degrees} do not have the shape (2,d,...,d), d >= 3")
    _check_spec(ci, spec)
    n, c, d = ci.n, ci.c, ci.degrees[-1]
    dims = eigenspace_dims(spec, d)
    half_defect = Fraction((n + 1) ** 2 - spec.sum_sq, 2)
    block = binom(n + d, n) - binom(n + d - 2, n)
    out = []
    for w, dim in enumerate(dims):
        for b1, b2 in _splits(c - 1):
            lhs = half_defect + (b1 - b2) * dim + 2 * b1 * b2
            out.append(CaseCertificate(ci, spec, "one-quadric", b1, b2, w, lhs, Fraction(b1 * block)))
    return out


ENGINES = {
    "equal-degrees": certify_equal_degrees,
    "two-quadrics": certify_two_quadrics_case,
    "one-quadric": certify_one_quadric_case,
}


def reduction_target(ci: CIType) -> CIType | None:
    """The type whose engine decides ``ci``.

    The longest prefix (d_1..d_l), cut where d_l < d_{l+1} or at the end, whose
    shape is one of the three engines and which is neither a single quadric
    nor (2,2).
    """
    degs = ci.degrees
    cuts = [l for l in range(1, len(degs) + 1) if l == len(degs) or degs[l - 1] < degs[l]]
    for l in reversed(cuts):
        sub = CIType(ci.n, degs[:l])
        if sub.degrees in ((2,), (2, 2)):
            continue
        if degree_pattern(sub) in ENGINES:
            return sub
    return None


def certify(ci: CIType, spec: EigenSpec) -> tuple[CIType, list[CaseCertificate]]:
    """Dispatch to the matching engine, via the prefix reduction if needed."""
    target = reduction_target(ci)
    if target is None:
        raise ValueError(f"no case engine applies to {ci}")
    return target, ENGINES[degree_pattern(target)](target, spec)


@dataclass
class CertifySweep:
    checked_pairs: int = 0
    certificates: int = 0
    failures: list = None
    worst: dict = None

    @property
    def ok(self) -> bool:
        return not self.failures


def sweep_certify(types, p_max: int, all_multisets: bool = False) -> CertifySweep:
    """Run the matching engine for every type and every weight multiset.

    By default the multisets are the canonical representatives under the affine
    group of Z/p (see eigencalc.canonical_multiplicities); certificate
    outcomes are invariant under that group since every residue w is checked.
    """
    from .eigencalc import all_multiplicities, canonical_multiplicities, primes_upto

    out = CertifySweep(failures=[], worst={})
    types = list(types)
    for n in sorted({ci.n for ci in types}):
        group = [ci for ci in types if ci.n == n]
        for p in primes_upto(p_max):
            gen = all_multiplicities(p, n + 1) if all_multisets else canonical_multiplicities(p, n + 1)
            for a in gen:
                spec = EigenSpec.from_multiplicities(p, a)
                if spec.mu < 2:
                    continue
                for ci in group:
                    target, certs = certify(ci, spec)
                    out.checked_pairs += 1
                    out.certificates += len(certs)
                    for cert in certs:
                        prev = out.worst.get(ci)
                        if prev is None or cert.margin < prev.margin:
                            out.worst[ci] = cert
                        if not cert.holds:
                            out.failures.append(cert)
    return out


def desk_types(n_max: int, c_max: int = 3, d_max: int = 4, min_dim: int = 2):
    """Non-all-quadric types with n <= n_max, c <= c_max, degrees <= d_max, dim >= min_dim."""
    from itertools import combinations_with_replacement

    for n in range(2, n_max + 1):
        for c in range(1, c_max + 1):
            if n - c < min_dim:
                continue
            for degs in combinations_with_replacement(range(2, d_max + 1), c):
                if all(d == 2 for d in degs):
                    continue
                yield CIType(n, degs)
