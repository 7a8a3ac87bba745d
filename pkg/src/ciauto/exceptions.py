"""Exceptional types from the codimension count for linear subspaces on X.

For an l-plane Lambda on X = X_1 cap ... cap X_c in P^n, the locus of
(X_1..X_c) where the normal-bundle condition along Lambda fails has
codimension

    sum_i C(d_i+l, d_i) - (n-l)(l+1) + max(0, sum_i C(d_i+l-1, l) + l+1-n)

in the product of linear systems.  A type is exceptional for l when this is
at most n+1, in the range n-c >= 2l >= n-c-2.

l = 0 gives c - n for every degree vector, so it is a pure condition
(n - c = 2).  For l = 1 the inequality reads 2 sum d_i <= 4n - c - 3 whenever
the max term is active.  Larger l are enumerated tuple by tuple.
"""

from __future__ import annotations

from dataclasses import dataclass

from .combinat import CIType, binom


@dataclass(frozen=True, order=True)
class ExceptionRecord:
    ci: CIType
    l: int
    value: int
    threshold: int

    @property
    def is_exception(self) -> bool:
        return self.value <= self.threshold


def codim_formula(ci: CIType, l: int) -> int:
    n = ci.n
    if not 0 <= l <= n:
        raise ValueError(f"need 0 <= l <= n, got l={l}, n={n}")
    main = sum(binom(d + l, d) for d in ci.degrees) - (n - l) * (l + 1)
    extra = sum(binom(d + l - 1, l) for d in ci.degrees) + l + 1 - n
    return main + max(0, extra)


def l_range(n: int, c: int) -> range:
    """l with n-c >= 2l >= n-c-2."""
    k = n - c
    return range(max(0, (k - 1) // 2), k // 2 + 1)


def l0_condition(ci: CIType) -> bool:
    return ci.n - ci.c == 2


def l1_condition(ci: CIType, lo: int = 3) -> bool:
    """lo <= n-c <= 4 and 2 sum d_i <= 4n - c - 3.

    n - c = 2 is already covered by the l = 0 condition, hence lo = 3.
    """
    k = ci.n - ci.c
    return lo <= k <= 4 and 2 * sum(ci.degrees) <= 4 * ci.n - ci.c - 3


def _sorted_tuples(c: int, lo: int, accept):
    """Nondecreasing degree tuples of length c, entries >= lo.

    ``accept(prefix_padded)`` must be monotone: once it fails for a padded
    prefix, every larger entry in that position fails too.
    """
    def rec(prefix):
        if len(prefix) == c:
            yield tuple(prefix)
            return
        d = prefix[-1] if prefix else lo
        while True:
            trial = prefix + [d] * (c - len(prefix))
            if not accept(tuple(trial)):
                break
            yield from rec(prefix + [d])
            d += 1

    yield from rec([])


def enumerate_lemma44(n_max: int, l_min: int = 1) -> list[ExceptionRecord]:
    """Every exceptional (type, l) with l >= l_min, d_c >= 3 and n <= n_max.

    Degrees are pruned using monotonicity of the formula in each d_i, which
    ``monotonicity_violations`` checks on the enumerated range.
    """
    if n_max < 5:
        raise ValueError("n_max must be >= 5")
    if l_min < 1:
        raise ValueError("l = 0 accepts every degree tuple; use l0_condition instead")
    out = []
    for n in range(2, n_max + 1):
        for c in range(1, n):
            for l in l_range(n, c):
                if l < l_min:
                    continue
                accept = lambda degs, n=n, l=l: codim_formula(CIType(n, degs), l) <= n + 1
                for degs in _sorted_tuples(c, 2, accept):
                    if degs[-1] < 3:
                        continue
                    ci = CIType(n, degs)
                    out.append(ExceptionRecord(ci, l, codim_formula(ci, l), n + 1))
    return sorted(out, key=lambda r: (r.l, r.ci))


def conditions() -> dict[int, str]:
    """The exception conditions stated without tuples."""
    return {0: "n - c = 2", 1: "3 <= n - c <= 4 and 2*sum(d) <= 4n - c - 3"}


def by_l(records) -> dict[int, list[CIType]]:
    out: dict[int, list[CIType]] = {}
    for r in records:
        out.setdefault(r.l, []).append(r.ci)
    return {l: sorted(v) for l, v in sorted(out.items())}


def fano_filter(ci: CIType) -> bool:
    """Types the degeneration argument cannot reach.

    Either the extension criterion applies or K is nef (sum d_i >= n+1), and
    hypersurfaces (c = 1) and intersections of quadrics are handled
    elsewhere.  What is left: c >= 2, sum d_i <= n, some d_i >= 3.
    """
    return ci.c >= 2 and sum(ci.degrees) <= ci.n and not ci.all_quadrics


def fano_candidates(n_max: int):
    """All types passing ``fano_filter`` with n <= n_max."""
    for n in range(2, n_max + 1):
        for c in range(2, n):
            for degs in _sorted_tuples(c, 2, lambda t, n=n: sum(t) <= n):
                ci = CIType(n, degs)
                if fano_filter(ci):
                    yield ci


def theorem_exception_filter(records, n_max: int | None = None) -> list[CIType]:
    """Fano types with c >= 2 that are exceptional for some l.

    The l = 0 and l = 1 exceptions are taken in their condition form and
    tested on every Fano candidate up to n_max (default: the largest n in the
    records); l >= 2 comes from the records.
    """
    records = list(records)
    if n_max is None:
        n_max = max((r.ci.n for r in records), default=0)
    listed = {r.ci for r in records if r.l >= 2 and r.is_exception}
    out = set()
    for ci in fano_candidates(n_max):
        if l0_condition(ci) or l1_condition(ci) or ci in listed:
            out.add(ci)
    return sorted(out)


def monotonicity_violations(n_max: int, d_max: int = 8, c_max: int = 4) -> tuple[int, list]:
    """Raise one degree at a time and compare the formula; returns (pairs, violations)."""
    from itertools import combinations_with_replacement

    pairs, bad = 0, []
    for n in range(2, n_max + 1):
        for c in range(1, min(c_max, n - 1) + 1):
            for l in l_range(n, c):
                for degs in combinations_with_replacement(range(2, d_max + 1), c):
                    v = codim_formula(CIType(n, degs), l)
                    for i in range(c):
                        up = list(degs)
                        up[i] += 1
                        w = codim_formula(CIType(n, tuple(up)), l)
                        pairs += 1
                        if w < v:
                            bad.append((n, degs, i, l, v, w))
    return pairs, bad
