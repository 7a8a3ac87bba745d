"""Coordinate bookkeeping for the resolution of a scaling map.

A scaling map multiplies the coordinate blocks

    block 0 = z_0..z_{a_1},  block b = z_{a_b+1}..z_{a_{b+1}},  block l = z_{a_l+1}..z_n

by t^{mu_0}, ..., t^{mu_l} with 0 = mu_0 < ... < mu_l.  Its indeterminacy is
resolved by blowing up the nested coordinate subspaces

    Lambda_{f,i} = {z_0 = ... = z_{a_i} = 0}      (blocks 0..i-1 vanish)

and the inverse map is resolved along

    Lambda_{g,i} = {z_{a_{l+1-i}+1} = ... = z_n = 0}   (blocks l+1-i..l vanish).

Everything here works on index sets and on arcs truncated to their leading
terms: an arc is a list of (valuation, leading coefficient) pairs, which is all
the t -> 0 limits depend on.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations


@dataclass(frozen=True)
class ScalingMap:
    mu: tuple[int, ...]
    cuts: tuple[int, ...]
    n: int

    def __post_init__(self) -> None:
        mu, cuts = tuple(self.mu), tuple(self.cuts)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "cuts", cuts)
        if len(cuts) < 1:
            raise ValueError("need l >= 1 cut")
        if len(mu) != len(cuts) + 1:
            raise ValueError(f"{len(mu)} exponents for {len(cuts)} cuts; need l+1 and l")
        if mu[0] != 0 or any(x >= y for x, y in zip(mu, mu[1:])):
            raise ValueError(f"exponents {mu} must start at 0 and increase strictly")
        if cuts[0] < 0 or cuts[-1] >= self.n or any(x >= y for x, y in zip(cuts, cuts[1:])):
            raise ValueError(f"cuts {cuts} must satisfy 0 <= a_1 < ... < a_l < n={self.n}")

    @property
    def l(self) -> int:
        return len(self.cuts)

    @property
    def nvars(self) -> int:
        return self.n + 1

    def block(self, b: int) -> range:
        lo = 0 if b == 0 else self.cuts[b - 1] + 1
        hi = self.n if b == self.l else self.cuts[b]
        return range(lo, hi + 1)

    def block_of(self) -> tuple[int, ...]:
        """Block index of every coordinate."""
        out = []
        for b in range(self.l + 1):
            out.extend([b] * len(self.block(b)))
        return tuple(out)

    def shifts(self) -> tuple[int, ...]:
        """mu of the block each coordinate sits in."""
        return tuple(self.mu[b] for b in self.block_of())

    # Subspaces are recorded by the coordinates that stay free (their span).
    def f_span(self, i: int) -> frozenset[int]:
        """Free coordinates of Lambda_{f,i}, 0 <= i <= l+1."""
        if not 0 <= i <= self.l + 1:
            raise ValueError(f"i={i} out of range 0..{self.l + 1}")
        return frozenset(j for b in range(i, self.l + 1) for j in self.block(b))

    def g_span(self, i: int) -> frozenset[int]:
        """Free coordinates of Lambda_{g,i}, 0 <= i <= l+1."""
        if not 0 <= i <= self.l + 1:
            raise ValueError(f"i={i} out of range 0..{self.l + 1}")
        return frozenset(j for b in range(0, self.l + 1 - i) for j in self.block(b))

    def f_dim(self, i: int) -> int:
        return len(self.f_span(i)) - 1

    def g_dim(self, i: int) -> int:
        return len(self.g_span(i)) - 1

    def reversed(self) -> "ScalingMap":
        """The inverse map written in normal form.

        g multiplies block b by t^{-mu_b}; rescaling by t^{mu_l} and reversing
        the coordinate order gives exponents mu_l - mu_{l-b} on block b.
        """
        l, n = self.l, self.n
        mu = tuple(self.mu[l] - self.mu[l - b] for b in range(l + 1))
        cuts = tuple(sorted(n - 1 - a for a in self.cuts))
        return ScalingMap(mu, cuts, n)

    def __str__(self) -> str:
        return f"mu={self.mu} cuts={self.cuts} n={self.n}"


def random_map(rng: random.Random, n_max: int = 12, gap_max: int = 3) -> ScalingMap:
    n = rng.randint(1, n_max)
    l = rng.randint(1, n)
    cuts = tuple(sorted(rng.sample(range(n), l)))
    mu = [0]
    for _ in range(l):
        mu.append(mu[-1] + rng.randint(1, gap_max))
    return ScalingMap(tuple(mu), cuts, n)


# -- flags and duality ---------------------------------------------------------


@dataclass
class FlagRow:
    i: int
    f_zero: tuple[int, ...]
    f_dim: int
    g_zero: tuple[int, ...]
    g_dim: int
    dual_dim: int  # dim Lambda_{g,l+1-i}
    dual_ok: bool


@dataclass
class FlagReport:
    map: ScalingMap
    rows: list[FlagRow]
    nested: bool
    pair_sums_ok: bool

    @property
    def ok(self) -> bool:
        return self.nested and self.pair_sums_ok and all(r.dual_ok for r in self.rows)


def flags(m: ScalingMap) -> FlagReport:
    """Both flags, their dimensions and the duality between them.

    For 0 <= i <= l+1 the subspaces Lambda_{f,i} and Lambda_{g,l+1-i} must be
    disjoint with dimensions adding to n-1.  The report also checks strict
    nesting and the summed form over consecutive pairs.
    """
    l, n = m.l, m.n
    allc = frozenset(range(n + 1))
    rows = []
    for i in range(l + 2):
        fs, gs = m.f_span(i), m.g_span(i)
        dual = m.g_span(l + 1 - i)
        ok = len(fs) - 1 + len(dual) - 1 == n - 1 and not (fs & dual)
        rows.append(
            FlagRow(i, tuple(sorted(allc - fs)), len(fs) - 1, tuple(sorted(allc - gs)), len(gs) - 1,
                    len(dual) - 1, ok)
        )
    nested = all(m.f_span(i) > m.f_span(i + 1) and m.g_span(i) > m.g_span(i + 1) for i in range(l + 1))
    pair_ok = all(
        m.f_dim(i) + m.f_dim(i + 1) + m.g_dim(l - i) + m.g_dim(l - i + 1) == 2 * (n - 1)
        for i in range(l + 1)
    )
    return FlagReport(m, rows, nested, pair_ok)


def dim_formula_ok(m: ScalingMap) -> bool:
    """dim Lambda_{f,i} = n - a_i - 1 and dim Lambda_{g,i} = a_{l+1-i} for 1 <= i <= l."""
    return all(
        m.f_dim(i) == m.n - m.cuts[i - 1] - 1 and m.g_dim(i) == m.cuts[m.l - i]
        for i in range(1, m.l + 1)
    )


# -- arcs ----------------------------------------------------------------------


@dataclass(frozen=True)
class Arc:
    vals: tuple[int, ...]
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vals", tuple(int(v) for v in self.vals))
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if len(self.vals) != len(self.coeffs) or not self.vals:
            raise ValueError("valuations and coefficients must have the same nonzero length")
        if any(c == 0 for c in self.coeffs):
            raise ValueError("leading coefficients must be nonzero")

    def limit(self) -> tuple[int, ...]:
        """The t -> 0 limit: leading coefficients where the valuation is minimal."""
        m = min(self.vals)
        return tuple(c if v == m else 0 for v, c in zip(self.vals, self.coeffs))

    def times_t(self, k: int) -> "Arc":
        return Arc(tuple(v + k for v in self.vals), self.coeffs)

    def reversed(self) -> "Arc":
        return Arc(self.vals[::-1], self.coeffs[::-1])


def same_point(p, r) -> bool:
    """Projective equality of two integer vectors."""
    if not any(p) or not any(r):
        return False
    return all(p[i] * r[j] == p[j] * r[i] for i in range(len(p)) for j in range(i + 1, len(p)))


def apply_map(m: ScalingMap, arc: Arc, direction: str = "forward") -> Arc:
    if len(arc.vals) != m.nvars:
        raise ValueError(f"arc has {len(arc.vals)} coordinates, map acts on {m.nvars}")
    sign = {"forward": 1, "inverse": -1}.get(direction)
    if sign is None:
        raise ValueError(f"direction must be forward or inverse, not {direction!r}")
    return Arc(tuple(v + sign * s for v, s in zip(arc.vals, m.shifts())), arc.coeffs)


@dataclass(frozen=True)
class Stratum:
    index: int
    tie: bool


def stratum(m: ScalingMap, arc: Arc) -> Stratum:
    """Which exceptional divisor F_i the lift of the arc meets.

    Let m_b be the least valuation in block b (after making the arc's least
    valuation 0) and s_b = m_b + mu_b.  In the chart reached after the first
    k-1 blowups the block-b coordinates have valuation s_b - mu_{k-1}.  The arc
    meets center k when all of those are positive; the lift then lies in the
    t-chart of the new divisor when min s_b >= mu_k, and on the boundary with
    F_{k-1} otherwise.  A boundary arc is reported with the smaller index and a
    tie flag.
    """
    if len(arc.vals) != m.nvars:
        raise ValueError(f"arc has {len(arc.vals)} coordinates, map acts on {m.nvars}")
    base = min(arc.vals)
    mins = [min(arc.vals[j] for j in m.block(b)) - base for b in range(m.l + 1)]
    s = [mb + mu for mb, mu in zip(mins, m.mu)]
    k = 0
    while k < m.l:
        low = min(s[: k + 1])
        if low <= m.mu[k]:
            return Stratum(k, False)
        if low < m.mu[k + 1]:
            return Stratum(k, True)
        k += 1
    return Stratum(m.l, False)


@dataclass(frozen=True)
class ArcLimit:
    limit: tuple[int, ...]
    stratum: int
    tie: bool


def arc_limit(m: ScalingMap, arc: Arc, direction: str = "forward") -> ArcLimit:
    """Limit of the scaled arc plus the stratum of the arc.

    forward applies f and reports F_i; inverse applies g = f^{-1} and reports
    the G_i stratum, computed on the reversed normal form of g.
    """
    image = apply_map(m, arc, direction)
    if direction == "forward":
        st = stratum(m, arc)
    else:
        st = stratum(m.reversed(), arc.reversed())
    return ArcLimit(image.limit(), st.index, st.tie)


def random_arc_in(m: ScalingMap, i: int, rng: random.Random, spread: int = 3, cmax: int = 50) -> Arc:
    """An arc whose lift meets the interior of F_i.

    Blocks before i get valuations >= mu_i - mu_b, block i has a zero
    valuation, later blocks are arbitrary.
    """
    vals = [0] * m.nvars
    for b in range(m.l + 1):
        idx = list(m.block(b))
        if b < i:
            for j in idx:
                vals[j] = m.mu[i] - m.mu[b] + rng.randint(0, spread)
        elif b == i:
            for j in idx:
                vals[j] = rng.randint(0, spread)
            vals[rng.choice(idx)] = 0
        else:
            for j in idx:
                vals[j] = rng.randint(0, spread + m.mu[-1])
    coeffs = [rng.choice([-1, 1]) * rng.randint(1, cmax) for _ in range(m.nvars)]
    return Arc(tuple(vals), tuple(coeffs))


def _restrict(point, keep) -> tuple[int, ...]:
    return tuple(x if j in keep else 0 for j, x in enumerate(point))


@dataclass
class CorrespondenceReport:
    map: ScalingMap
    samples: int
    checked: int
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations


def stratum_correspondence(m: ScalingMap, samples: int, seed: int) -> CorrespondenceReport:
    """Check where arcs through each F_i go under f.

    For each i and each sampled arc through F_i: the stratum is i without a
    tie, the forward limit lies in Lambda_{g,l-i}, and the square

        pi_{Lambda_{f,i+1}}(unscaled limit) = pi_{Lambda_{g,l-i+1}}(forward limit)

    holds; both projections land in Lambda_{f,i} cap Lambda_{g,l-i}, the span
    of block i.  The same is checked for g with the roles swapped.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = random.Random(seed)
    out = CorrespondenceReport(m, samples, 0, [])
    for label, mm in (("f", m), ("g", m.reversed())):
        l = mm.l
        for i in range(l + 1):
            target = mm.g_span(l - i)
            blk = frozenset(mm.block(i))
            for _ in range(samples):
                arc = random_arc_in(mm, i, rng)
                out.checked += 1
                st = stratum(mm, arc)
                fwd = apply_map(mm, arc).limit()
                base = arc.limit()
                left = _restrict(base, mm.g_span(l - i))  # projection from Lambda_{f,i+1}
                right = _restrict(fwd, mm.f_span(i))  # projection from Lambda_{g,l-i+1}
                problems = []
                if st != Stratum(i, False):
                    problems.append(f"stratum {st}")
                if any(x for j, x in enumerate(fwd) if j not in target):
                    problems.append("forward limit outside Lambda_{g,l-i}")
                if any(x for j, x in enumerate(base) if j not in mm.f_span(i)):
                    problems.append("unscaled limit outside Lambda_{f,i}")
                if any(x for j, x in enumerate(left) if j not in blk) or not same_point(left, right):
                    problems.append("square does not commute")
                if problems:
                    out.violations.append((label, i, arc, problems))
    return out


@dataclass
class BirresSweep:
    maps: int
    duality_failures: list
    correspondence_maps: int
    correspondence_checked: int
    correspondence_failures: list
    roundtrip_checked: int
    roundtrip_failures: list

    @property
    def ok(self) -> bool:
        return not (self.duality_failures or self.correspondence_failures or self.roundtrip_failures)


def sweep(random_maps: int, seed: int, n_max: int = 12, corr_maps: int = 50, corr_samples: int = 100,
          roundtrip_arcs: int = 1) -> BirresSweep:
    """Duality on random maps, arc correspondence on a subset, and f then g round trips."""
    rng = random.Random(seed)
    maps = [random_map(rng, n_max) for _ in range(random_maps)]
    dual_bad = [str(m) for m in maps if not (flags(m).ok and dim_formula_ok(m))]
    corr_bad, checked = [], 0
    for k, m in enumerate(maps[:corr_maps]):
        rep = stratum_correspondence(m, corr_samples, seed * 1_000_003 + k)
        checked += rep.checked
        corr_bad.extend((str(m), v) for v in rep.violations)
    rt_bad, rt = [], 0
    for m in maps:
        for _ in range(roundtrip_arcs):
            arc = random_arc_in(m, 0, rng)
            rt += 1
            back = arc_limit(m, apply_map(m, arc, "forward"), "inverse")
            if not same_point(back.limit, arc.limit()):
                rt_bad.append((str(m), arc))
    return BirresSweep(len(maps), dual_bad, min(corr_maps, len(maps)), checked, corr_bad, rt, rt_bad)


def all_maps(n: int):
    """Every scaling map on P^n with exponents 0, 1, ..., l (cut patterns only)."""
    for l in range(1, n + 1):
        for cuts in combinations(range(n), l):
            yield ScalingMap(tuple(range(l + 1)), cuts, n)
