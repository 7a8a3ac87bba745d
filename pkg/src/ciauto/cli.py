"""Command-line driver.

Every subcommand produces a list of records.  Each record has a ``kind``, a
``key`` and a ``status`` in {passed, failed, unknown}; the report is those
records sorted by key, bracketed by a config record and a summary record.
``--format structured`` writes one JSON object per line; nothing in it depends
on wall-clock time, so identical flags give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import __version__, acceptance, birres, certify, eigencalc, exceptions, torelli, varieties
from .combinat import CIType
from .eigencalc import EigenSpec, is_prime, primes_upto
from .poly import PrimeField, prime_with_roots

SCHEMA_VERSION = 1
STATUSES = ("passed", "failed", "unknown")


@dataclass
class Report:
    command: str
    config: dict
    records: list = field(default_factory=list)
    incomplete: bool = False

    def add(self, kind: str, key, status: str, **data) -> None:
        if status not in STATUSES:
            raise ValueError(f"bad status {status!r}")
        self.records.append({"kind": kind, "key": list(key), "status": status, **data})

    def sorted_records(self) -> list[dict]:
        return sorted(self.records, key=lambda r: (r["kind"], _sort_key(r["key"])))

    def counts(self) -> dict:
        out = dict.fromkeys(STATUSES, 0)
        for r in self.records:
            out[r["status"]] += 1
        return out

    @property
    def exit_code(self) -> int:
        return 1 if self.counts()["failed"] else 0


def _sort_key(key):
    return tuple((0, k, "") if isinstance(k, int) else (1, 0, str(k)) for k in key)


# -- argument handling --------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {v}")
    return v


def _prime(text: str) -> int:
    v = int(text)
    if not is_prime(v):
        raise argparse.ArgumentTypeError(f"{v} is not prime")
    return v


def _bound(text: str) -> int:
    v = int(text)
    if v < 2:
        raise argparse.ArgumentTypeError(f"prime bound must be >= 2, got {v}")
    return v


def _degrees(text: str) -> tuple[int, ...]:
    try:
        degs = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"degrees must be comma-separated integers, got {text!r}")
    if not degs or min(degs) < 1:
        raise argparse.ArgumentTypeError("degrees must be positive")
    return degs


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--seed", type=int, default=0)

    ap = argparse.ArgumentParser(prog="ciauto", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"ciauto {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", parents=[common], help="case-engine certificates")
    p.add_argument("--n", type=_positive)
    p.add_argument("--degrees", type=_degrees)
    p.add_argument("--n-max", type=_positive, default=10)
    p.add_argument("--d-max", type=_positive, default=4)
    p.add_argument("--p-max", type=_bound, default=7)

    p = sub.add_parser("eigen", parents=[common], help="eigenspace dimension bounds")
    p.add_argument("--n", type=_positive, help="single n instead of the range 3..n-max")
    p.add_argument("--n-max", type=_positive, default=12)
    p.add_argument("--p-max", type=_bound, default=13)
    p.add_argument("--d-max", type=_positive, default=8)

    p = sub.add_parser("varieties", parents=[common], help="nodal constructions, pencils, cyclic example")
    p.add_argument("--n", type=_positive)
    p.add_argument("--degrees", type=_degrees)
    p.add_argument("--q", type=_prime)
    p.add_argument("--budget-points", type=_positive, default=varieties.DEFAULT_BUDGET)

    p = sub.add_parser("birres", parents=[common], help="scaling-map flags and arc strata")
    p.add_argument("--random-maps", type=_positive, default=1000)
    p.add_argument("--n-max", type=_positive, default=12)

    p = sub.add_parser("torelli", parents=[common], help="vanishing sweep for the period-map conditions")
    p.add_argument("--n-max", type=_positive, default=6, help="largest ambient dimension")
    p.add_argument("--d-max", type=_positive, default=6)
    p.add_argument("--q", type=_prime, default=101)
    p.add_argument("--budget-points", type=_positive, default=800,
                   help="largest monomial space handled by the matrix route")

    p = sub.add_parser("exceptions", parents=[common], help="exceptional types from the codimension count")
    p.add_argument("--n-max", type=_positive, default=12)
    p.add_argument("--emit", choices=("lemma44", "theorem"), default="lemma44")

    p = sub.add_parser("all", parents=[common], help="the acceptance suite")
    p.add_argument("--only", type=_positive, action="append", help="criterion number (repeatable)")
    return ap


# -- subcommands ------------------------------------------------------------------


def _cert_fields(cert) -> dict:
    return {
        "case": cert.case, "spec": str(cert.spec), "w": cert.w, "b1": cert.b1, "b2": cert.b2,
        "lhs": str(cert.lhs), "rhs": str(cert.rhs), "margin": str(cert.margin),
    }


def run_certify(args, rep: Report) -> None:
    if (args.n is None) != (args.degrees is None):
        raise SystemExit("certify: --n and --degrees go together")
    if args.n is not None:
        ci = CIType(args.n, args.degrees)
        if certify.reduction_target(ci) is None:
            raise SystemExit(f"certify: no case engine applies to {ci}")
        for p in primes_upto(args.p_max):
            for a in eigencalc.canonical_multiplicities(p, ci.n + 1):
                spec = EigenSpec.from_multiplicities(p, a)
                target, certs = certify.certify(ci, spec)
                worst = min(certs, key=lambda c: c.margin)
                status = "passed" if all(c.holds for c in certs) else "failed"
                rep.add("certificate", (str(ci), p, *a), status, target=str(target),
                        certificates=len(certs), **_cert_fields(worst))
        return
    types = list(certify.desk_types(args.n_max, c_max=3, d_max=args.d_max, min_dim=2))
    s = certify.sweep_certify(types, args.p_max)
    bad = {f.ci for f in s.failures}
    for ci in types:
        rep.add("type", (ci.n, *ci.degrees), "failed" if ci in bad else "passed",
                type=str(ci), target=str(certify.reduction_target(ci)), **_cert_fields(s.worst[ci]))


def run_eigen(args, rep: Report) -> None:
    ns = [args.n] if args.n else list(range(3, args.n_max + 1))
    for n in ns:
        d_range = range(3, args.d_max + 1)
        for name, s in (
            ("codimension", eigencalc.sweep_lemma22([n], args.p_max, d_range, include_d2=True)),
            ("max-dimension", eigencalc.sweep_lemma24([n], args.p_max, range(2, args.d_max + 1))),
        ):
            rep.add(name, (n,), "passed" if s.ok else "failed", checked=s.checked,
                    violations=[list(map(str, v)) for v in s.violations[:20]])


def _strata_record(rep: Report, key, F, budget: int, **extra) -> None:
    try:
        st = varieties.strata(F, budget=budget)
    except varieties.BudgetExceeded as e:
        rep.incomplete = True
        rep.add("strata", key, "unknown", reason=str(e), **extra)
        return
    buckets = {str(r): len(v) for r, v in sorted(st.buckets.items())}
    rep.add("strata", key, "passed", label=st.label(), points_scanned=st.points_scanned,
            corank_counts=buckets, singular=[list(p) for p in st.singular[:50]], **extra)


def _nodal_records(rep: Report, ci: CIType, q: int, seed: int, budget: int) -> None:
    F = varieties.nodal_ci(ci, PrimeField(q), seed)
    pts = varieties.coordinate_points(ci.n + 1)
    nodes = varieties.verify_nodes(F, pts)
    key = (str(ci), q, seed)
    rep.add("nodes", key, "passed" if nodes.ok else "failed", forms=[f.to_text() for f in F],
            points={",".join(map(str, p)): v for p, v in sorted(nodes.points.items())})
    _strata_record(rep, key, F, budget)


def run_varieties(args, rep: Report) -> None:
    if (args.n is None) != (args.degrees is None):
        raise SystemExit("varieties: --n and --degrees go together")
    if args.n is not None:
        _nodal_records(rep, CIType(args.n, args.degrees), args.q or 11, args.seed, args.budget_points)
        return
    primes = (args.q,) if args.q else acceptance.PENCIL_PRIMES
    for q in primes:
        for n in (4, 5, 6):
            lam = acceptance.pencil_eigenvalues(n, q, args.seed or acceptance.PENCIL_SEED)
            pr = varieties.pencil_automorphisms(lam, PrimeField(q))
            good = pr.group_order == 2**n and pr.mobius_trivial and pr.torus_squares_constant
            rep.add("pencil", (n, q), "passed" if good else "failed", eigenvalues=lam,
                    group_order=pr.group_order, mobius_fixers=[list(map(int, g)) for g in pr.mobius_fixers])
    for n in range(3, 9):
        q = prime_with_roots(2 * n, args.q or 101)
        cr = varieties.cyclic_22_example(n, PrimeField(q))
        rep.add("cyclic", (n, q), "passed" if cr.ok else "failed", eta=cr.eta,
                d_scalar=cr.d_scalar, e_scalar=cr.e_scalar)
    for (n, degs), qs in acceptance.NODAL_SWEEP_PRIMES.items():
        for q in ((args.q,) if args.q else qs):
            _nodal_records(rep, CIType(n, degs), q, args.seed, args.budget_points)


def run_birres(args, rep: Report) -> None:
    import random

    rng = random.Random(args.seed)
    maps = [birres.random_map(rng, args.n_max) for _ in range(args.random_maps)]
    for k, m in enumerate(maps):
        fr = birres.flags(m)
        ok = fr.ok and birres.dim_formula_ok(m)
        rep.add("flags", (k,), "passed" if ok else "failed", map=str(m),
                table=[[r.i, r.f_dim, r.g_dim, r.dual_dim, r.dual_ok] for r in fr.rows])
    for k, m in enumerate(maps[:50]):
        cr = birres.stratum_correspondence(m, 100, args.seed * 1_000_003 + k)
        rep.add("arcs", (k,), "passed" if cr.ok else "failed", map=str(m), checked=cr.checked,
                violations=[str(v) for v in cr.violations[:10]])


def run_torelli(args, rep: Report) -> None:
    s = torelli.torelli_sweep(args.n_max, args.d_max, q=args.q, budget=args.budget_points, seed=args.seed)
    for ci, rec in sorted(s.records.items()):
        if rec.status == "certified":
            status = "passed"
        elif rec.exception or rec.caveat:
            status = "unknown"
        else:
            status = "failed"
        data = {"type": str(ci), "dim": rec.dim_x, "outcome": rec.status, "good_p": rec.good_p,
                "exception": rec.exception, "caveat": rec.caveat, "reason": rec.reason,
                "routes": {str(p): r.route for p, r in sorted(rec.i_by_p.items())}}
        if rec.status == "flagged":
            data["trace"] = [
                {"j": t.j, "e": list(t.e), "twist": t.twist,
                 "spots": [[sc.k, sc.spot and [sc.spot.r, sc.spot.a, sc.spot.b, sc.spot.l], sc.case]
                           for sc in t.result.trace]}
                for t in rec.ii.terms
            ]
        rep.add("torelli", (ci.n, *ci.degrees), status, **data)


def run_exceptions(args, rep: Report) -> None:
    if args.n_max < 5:
        raise SystemExit("exceptions: --n-max must be at least 5")
    recs = exceptions.enumerate_lemma44(args.n_max)
    if args.emit == "lemma44":
        for l, cond in exceptions.conditions().items():
            rep.add("condition", (l,), "passed", l=l, condition=cond)
        for r in recs:
            if r.l >= 2:
                rep.add("tuple", (r.l, *r.ci.key()), "passed", l=r.l, type=str(r.ci),
                        value=r.value, threshold=r.threshold)
    else:
        for ci in exceptions.theorem_exception_filter(recs, args.n_max):
            rep.add("tuple", ci.key(), "passed", type=str(ci))


def run_all(args, rep: Report) -> None:
    only = set(args.only) if args.only else None
    for crit in acceptance.run_all(only):
        rep.add("criterion", (crit.number,), "passed" if crit.ok else "failed", title=crit.title,
                detail=_jsonable(crit.detail), time_limit=crit.time_limit, within_time=crit.within_time)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


RUNNERS = {
    "certify": run_certify, "eigen": run_eigen, "varieties": run_varieties, "birres": run_birres,
    "torelli": run_torelli, "exceptions": run_exceptions, "all": run_all,
}


# -- output -------------------------------------------------------------------------


def render_structured(rep: Report) -> str:
    lines = [{"schema": SCHEMA_VERSION, "record": "config", "tool": f"ciauto {__version__}",
              "command": rep.command, "config": rep.config}]
    lines += [{"schema": SCHEMA_VERSION, "record": "result", **r} for r in rep.sorted_records()]
    lines.append({"schema": SCHEMA_VERSION, "record": "summary", **rep.counts(), "incomplete": rep.incomplete})
    return "".join(json.dumps(_jsonable(x), sort_keys=True) + "\n" for x in lines)


def _brief(r: dict) -> str:
    skip = {"kind", "key", "status", "trace", "table", "forms", "points", "detail", "violations", "singular"}
    return " ".join(f"{k}={v}" for k, v in r.items() if k not in skip)


def render_text(rep: Report) -> str:
    out = [f"ciauto {__version__} {rep.command} " + " ".join(f"{k}={v}" for k, v in rep.config.items() if v is not None)]
    for r in rep.sorted_records():
        key = ",".join(map(str, r["key"]))
        out.append(f"{r['status']:8} {r['kind']:13} {key:20} {_brief(r)}")
        if r["kind"] == "criterion":
            for k, v in r["detail"].items():
                if isinstance(v, list) and v:
                    out.append(f"{'':23}{k}: {v}")
        elif r.get("trace") is not None and r["status"] != "passed":
            out.append(f"{'':23}{r['reason']}")
    c = rep.counts()
    out.append(f"summary: passed={c['passed']} failed={c['failed']} unknown={c['unknown']}"
               + (" (incomplete)" if rep.incomplete else ""))
    return "\n".join(out) + "\n"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = {k: (list(v) if isinstance(v, tuple) else v) for k, v in sorted(vars(args).items())
              if k not in ("command", "out", "format")}
    rep = Report(args.command, config)
    try:
        RUNNERS[args.command](args, rep)
    except SystemExit as e:
        if isinstance(e.code, str):
            print(e.code, file=sys.stderr)
            return 2
        raise
    text = render_structured(rep) if args.format == "structured" else render_text(rep)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
