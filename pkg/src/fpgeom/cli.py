"""Command-line entry point: ``fpgeom <command> ...``.

Every command builds a RunReport (command, inputs, results, check counts,
version).  ``--format json`` prints it as a single sorted JSON document;
the default is a short human-readable rendering.  Exit status is 0 when all
checks pass, 1 when a check fails and 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import __version__, a2geom, acceptance, calculus, fourier, hopf, monics
from .ffpoly import Poly, check_prime, parse_poly

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    inputs: dict
    results: object = None
    checks_passed: int = 0
    checks_failed: int = 0
    failures: list[str] = field(default_factory=list)
    version: str = __version__

    def check(self, ok: bool, what: str) -> None:
        if ok:
            self.checks_passed += 1
        else:
            self.checks_failed += 1
            self.failures.append(what)

    def absorb(self, rep: hopf.CheckReport) -> None:
        self.checks_passed += rep.checks - len(rep.failures)
        self.checks_failed += len(rep.failures)
        self.failures.extend(rep.failures)

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "checks_passed": self.checks_passed,
            "checks_failed": self.checks_failed,
            "failures": self.failures,
            "version": self.version,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


def _prime(text: str) -> int:
    try:
        return check_prime(int(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


# -- commands ----------------------------------------------------------------------


def cmd_census(args) -> RunReport:
    rep = RunReport("census", {"p": args.p, "d": args.d, "regular_only": args.regular_only})
    recs = monics.census(args.p, args.d)
    n_reg = sum(r.regular for r in recs)
    rep.check(len(recs) == monics.gauss_count(args.p, args.d), "irreducible count vs Gauss formula")
    rep.check(n_reg == monics.regular_count(args.p, args.d), "regular count vs formula")
    if args.regular_only:
        recs = [r for r in recs if r.regular]
    rep.results = {
        "count": len(recs),
        "gauss_count": monics.gauss_count(args.p, args.d),
        "regular_count": monics.regular_count(args.p, args.d),
        "records": [r.to_json() for r in recs],
    }
    return rep


def _modulus(args) -> Poly:
    m = parse_poly(args.m, args.p)
    if m.degree < 1 or not m.is_monic():
        raise UsageError(f"modulus {args.m!r} must be monic of positive degree")
    if not monics.is_irreducible(m):
        raise UsageError(f"modulus {args.m!r} is not irreducible over F_{args.p}")
    return m


def cmd_h0(args) -> RunReport:
    rep = RunReport("h0", {"p": args.p, "m": args.m, "bound": args.bound, "quotient": args.quotient})
    m = _modulus(args)
    regular = monics.is_regular(m) if m != Poly.x(args.p) else False
    if args.quotient:
        dim, basis = calculus.h0_on_quotient(m)
        rep.check(dim == 1 if regular else dim >= 2, f"dim H0(A_d) = {dim} for regular={regular}")
        rep.results = {
            "m": m.format("mu"),
            "regular": regular,
            "dim": dim,
            "basis": [b.format() for b in basis],
        }
        return rep
    h = calculus.h0_generator(m, args.bound)
    rep.check(h.generator is not None, f"no generator up to degree {h.search_bound}")
    if regular:
        rep.check(h.classification is calculus.H0Class.G_D, "regular modulus without g_d generator")
    rep.results = dict(h.to_json(), regular=regular)
    return rep


def cmd_hopf(args) -> RunReport:
    p, d = args.p, args.d
    rep = RunReport("hopf", {"p": p, "d": d, "check": args.check})
    if args.check == "identities":
        sub = hopf.verify_delta_identities(p)
        rep.absorb(sub)
        if p == 2:
            rep.absorb(a2geom.p2_cocycle_check())
        rep.results = {
            "checks": sub.checks,
            "deltas": [hopf.delta(i, p).format() for i in range(p)],
        }
    elif args.check == "extension":
        sub = hopf.cd_extension_check(p, d)
        rep.absorb(sub)
        rep.results = sub.to_json()
    elif args.check == "frobenius":
        c = hopf.frobenius_fixed_dim(p, d)
        rep.check(c.agree, f"counts disagree: {c}")
        res = {"formula_count": c.formula_count, "coset_count": c.coset_count, "factor_count": c.factor_count}
        if p**d <= calculus.matrix_cap() and p**d <= 729:
            direct = hopf.frobenius_fixed_dim_direct(p, d)
            rep.check(direct == c.formula_count, "direct kernel count disagrees")
            res["direct_count"] = direct
        rep.results = res
    else:
        prims = hopf.primitives(p, d)
        rep.check(hopf.primitive_space_dim(p, d) == d, "primitive space is not d-dimensional")
        rep.results = {"primitives": [f.format() for f in prims]}
    return rep


def _tensor_json(t: hopf.TensorElem) -> list:
    return [[i, j, c] for (i, j), c in t.coeffs.items()]


def cmd_fourier(args) -> RunReport:
    p = args.p
    rep = RunReport("fourier", {"p": p, "transform": args.transform, "check": args.check, "mu": args.mu,
                                "deltaL": args.deltaL})
    if args.transform is not None:
        f = fourier.A1Elem(p, parse_poly(args.transform, p))
        F = fourier.fourier(f)
        rep.check(fourier.inverse_fourier(F) == f, "inverse transform does not recover f")
        res = {"f": f.coeffs.format(), "values": list(f.values()), "transform_t": F.coeffs.format("t")}
        if p > 2:
            res["transform_L"] = F.to_basis(fourier.L).coeffs.format("L")
            rep.check(fourier.fourier_exp_kernel(f).to_basis(fourier.T) == F, "exp-kernel form disagrees")
        rep.results = res
    elif args.check == "identities":
        if args.mu is None or args.mu % p == 0:
            raise UsageError("--check identities needs --mu with a nonzero residue")
        sub = fourier.verify_fourier_identities(p, args.mu)
        rep.absorb(sub)
        coh = fourier.h0_h1_a1(p, args.mu)
        rep.check((coh.h0_dim, coh.h1_dim) == (1, 1), f"cohomology dims {(coh.h0_dim, coh.h1_dim)}")
        res = {
            "identities_checked": sub.checks,
            "h0_dim": coh.h0_dim,
            "h1_dim": coh.h1_dim,
            "h1_representatives": [r.format() for r in coh.h1_representatives],
        }
        if p > 2:
            rep.check(fourier.coevaluation_integral(p) == 1, "volume != 1")
            res["volume"] = fourier.coevaluation_integral(p)
        rep.results = res
    elif args.deltaL:
        if p == 2:
            raise UsageError("Delta L is not defined for p=2")
        b = fourier.deltaL(p, fourier.BINOMIAL)
        rep.check(b == fourier.deltaL(p, fourier.MULTIPLICATIVE), "binomial and multiplicative forms differ")
        rep.check(b == fourier.deltaL_group_like(p), "differs from ln(t (x) t)")
        rep.results = {
            "terms": _tensor_json(b),
            "swinging_coefficients": fourier.swinging_coefficients(p)[1:],
        }
    else:
        raise UsageError("choose one of --transform, --check identities, --deltaL")
    return rep


def _connection_rows(metrics):
    rows = {}
    for name in metrics:
        rows[name] = [c.table() for c in a2geom.levi_civita_search(a2geom.METRICS[name])]
    return rows


def cmd_a2(args) -> RunReport:
    rep = RunReport("a2", {"mode": args.mode, "metric": args.metric})
    if args.mode == "structure":
        rep.absorb(a2geom.a2_structure_check())
        rels = a2geom.omega_relations()
        for name, ok in rels.items():
            rep.check(ok, name)
        rep.results = {"relations": rels, "idempotents": {
            "e1": a2geom.E1.to_poly().format(),
            "e2": a2geom.E2.to_poly().format(),
            "e3": a2geom.E3.to_poly().format(),
        }}
    elif args.mode == "cohomology":
        sub = a2geom.representatives_check()
        rep.absorb(sub)
        coh = a2geom.cohomology()
        rep.results = {
            "dims": list(coh.dims),
            "representatives": {
                "H0": [a.to_poly().format() for a in coh.h0],
                "H1": [repr(w) for w in coh.h1],
                "H2": [f"({a.to_poly().format()})dx^mu" for a in coh.h2],
            },
        }
    elif args.mode == "metrics":
        ms = a2geom.central_metrics()
        rep.check(len(ms) == 3, f"{len(ms)} central metrics")
        out = []
        for name, metric in a2geom.METRICS.items():
            inv = a2geom.metric_inverses(metric)
            rep.check(metric in ms, f"metric {name} not central")
            rep.check(len(inv) >= 1, f"metric {name} has no bimodule inverse")
            out.append({
                "name": name,
                "eta": metric.label(),
                "inverse_pairings": [{"(x)".join(a2geom._NAMES[i] for i in w): v for w, v in g.items()}
                                     for g in inv],
            })
        rep.results = {"metrics": out}
    elif args.mode == "connections":
        names = [args.metric] if args.metric else list(a2geom.METRICS)
        rows = _connection_rows(names)
        golden = acceptance.load_fixture("a2_connections.json")["metrics"]
        for name, tables in rows.items():
            rep.check(len(tables) == 2, f"metric {name}: {len(tables)} connections")
            rep.check(tables == golden[name]["connections"], f"metric {name}: tables differ from fixture")
        rep.results = {"connections": rows}
    else:
        res = {}
        for name, metric in a2geom.METRICS.items():
            res[name] = []
            for c in a2geom.levi_civita_search(metric):
                curv = a2geom.curvature(c)
                rep.check(all(v == (a2geom.ZERO, a2geom.ZERO) for v in curv.values()), f"{name}: {c.params} curved")
                res[name].append({
                    "params": list(c.params.astuple()),
                    "R": {k: [a.to_poly().format() for a in v] for k, v in curv.items()},
                })
        rep.results = {"curvature": res}
    return rep


def cmd_reproduce(args) -> RunReport:
    flt = "1" if args.paper_example else args.filter
    rep = RunReport("reproduce", {"paper_example": args.paper_example, "filter": args.filter})
    if not acceptance.select(flt):
        raise UsageError(f"filter {flt!r} matches no criterion")
    rows = []
    for crit, sub in acceptance.run_all(flt):
        rep.check(sub.passed, f"criterion {crit.key}: {crit.title}")
        rows.append({
            "criterion": crit.key,
            "title": crit.title,
            "passed": sub.passed,
            "checks": sub.checks,
            "failures": sub.failures[:20],
        })
    rep.results = {"criteria": rows}
    return rep


# -- rendering and dispatch ------------------------------------------------------


def render_table(rep: RunReport) -> str:
    lines = [f"{rep.command}: {rep.checks_passed} checks passed, {rep.checks_failed} failed"]
    res = rep.results
    if rep.command == "reproduce":
        for row in res["criteria"]:
            lines.append(f"  [{'PASS' if row['passed'] else 'FAIL'}] {row['criterion']}. {row['title']}"
                         f" ({row['checks']} checks)")
    elif rep.command == "census":
        lines.append(f"  {'m':<28} {'regular':<8} {'trace':<6} norm")
        for r in res["records"]:
            lines.append(f"  {r['m']:<28} {str(r['regular']):<8} {r['trace_of_mu']:<6} {r['norm_of_mu']}")
        lines.append(f"  {res['count']} listed; formulas give {res['gauss_count']} irreducible, "
                     f"{res['regular_count']} regular")
    else:
        lines.extend(_render_value(res, 1))
    for f in rep.failures:
        lines.append(f"  FAILED: {f}")
    return "\n".join(lines)


def _is_flat(value) -> bool:
    if isinstance(value, dict):
        return False
    if isinstance(value, list):
        return all(not isinstance(v, (dict, list)) or (isinstance(v, list) and _is_flat(v)) for v in value)
    return True


def _inline(value) -> str:
    if isinstance(value, list):
        return "[" + ", ".join(_inline(v) for v in value) + "]"
    return str(value)


def _render_value(value, depth: int) -> list[str]:
    pad = "  " * depth
    out = []
    if isinstance(value, dict):
        for k, v in value.items():
            if _is_flat(v):
                out.append(f"{pad}{k}: {_inline(v)}")
            else:
                out.append(f"{pad}{k}:")
                out.extend(_render_value(v, depth + 1))
    elif isinstance(value, list):
        for v in value:
            if _is_flat(v):
                out.append(f"{pad}- {_inline(v)}")
            else:
                out.append(f"{pad}-")
                out.extend(_render_value(v, depth + 1))
    else:
        out.append(f"{pad}{value}")
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default="table")

    ap = argparse.ArgumentParser(prog="fpgeom", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("census", parents=[common], help="monic irreducibles and regularity")
    s.add_argument("--p", type=_prime, required=True)
    s.add_argument("--d", type=_positive, required=True)
    s.add_argument("--regular-only", action="store_true")
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("h0", parents=[common], help="zeroth cohomology of F_p[x] or A_d")
    s.add_argument("--p", type=_prime, required=True)
    s.add_argument("--m", required=True, help='modulus, e.g. "1,1,1" or "mu^2+mu+1"')
    s.add_argument("--bound", type=_positive, default=None)
    s.add_argument("--quotient", action="store_true", help="compute H0 on A_d instead")
    s.set_defaults(func=cmd_h0)

    s = sub.add_parser("hopf", parents=[common], help="Hopf structure of A_d")
    s.add_argument("--p", type=_prime, required=True)
    s.add_argument("--d", type=_positive, default=1)
    s.add_argument("--check", choices=("identities", "extension", "frobenius", "primitives"), required=True)
    s.set_defaults(func=cmd_hopf)

    s = sub.add_parser("fourier", parents=[common], help="Fourier theory on A_1")
    s.add_argument("--p", type=_prime, required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--transform", metavar="POLY")
    g.add_argument("--check", choices=("identities",))
    g.add_argument("--deltaL", action="store_true")
    s.add_argument("--mu", type=int, default=None)
    s.set_defaults(func=cmd_fourier)

    s = sub.add_parser("a2", parents=[common], help="Riemannian geometry of A_2 over F_2")
    g = s.add_mutually_exclusive_group(required=True)
    for mode in ("structure", "cohomology", "metrics", "connections", "curvature"):
        g.add_argument(f"--{mode}", dest="mode", action="store_const", const=mode)
    s.add_argument("--metric", choices=("i", "ii", "iii"), default=None)
    s.set_defaults(func=cmd_a2)

    s = sub.add_parser("reproduce", parents=[common], help="run the acceptance criteria")
    s.add_argument("--paper-example", action="store_true", help="only the six H0 generator examples")
    s.add_argument("--filter", default=None, help="criterion number or tag (e.g. a2)")
    s.set_defaults(func=cmd_reproduce)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if getattr(args, "metric", None) and args.command == "a2" and args.mode != "connections":
        print("fpgeom: error: --metric only applies to --connections", file=sys.stderr)
        return EXIT_USAGE
    try:
        rep = args.func(args)
    except (UsageError, ValueError, ZeroDivisionError) as exc:
        print(f"fpgeom: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(rep.dumps() if args.format == "json" else render_table(rep))
    return EXIT_OK if rep.checks_failed == 0 else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
