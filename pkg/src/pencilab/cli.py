"""Command line front end.

Subcommands analyze a pencil given as a JSON file (see the pencil module
for the schema) and the `verify` subcommand runs the certification sweeps,
writing one CSV per suite plus a JSON summary.  Exit codes: 0 on success,
1 when a verification verdict failed, 2 on input or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import verify, weights
from .errors import PencilabError
from .pencil import (GridSpec, check_lemma21, check_regular_degeneration,
                     group_roots, load_pencil, poly_roots, q_polynomial,
                     tau_roots)
from .polygon import INF, build_polygon
from . import halfline


def _c(z: complex) -> str:
    return f"{z.real:.12g}{z.imag:+.12g}i"


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, default=str))
    else:
        print("\n".join(text_lines))


def _parse_point(args, n: int):
    xi_prime = np.array([float(x) for x in args.xi_prime.split(",")])
    if xi_prime.shape != (n - 1,):
        raise PencilabError(
            f"--xi-prime needs {n - 1} comma-separated values for n={n}")
    return xi_prime, args.lam


def cmd_polygon(args) -> int:
    p = load_pencil(args.pencil)
    np_ = build_polygon(p.exponent_points())
    w = weights.from_polygon(np_, lambda0=args.lambda0)
    lines = ["vertices: " + ", ".join(f"({v[0]},{v[1]})" for v in np_.vertices)]
    for s in np_.sides:
        d = "-" if s.d is None else str(s.d)
        r = "inf" if s.r == INF else str(s.r)
        lines.append(f"side ({s.start[0]},{s.start[1]}) -> "
                     f"({s.end[0]},{s.end[1]}): r = {r}, d = {d}")
    lines.append("weight factors (r, m): " + ", ".join(
        f"({'inf' if r == INF else r}, {m})" for r, m in w.factors))
    _emit(args, {"vertices": [[str(v[0]), str(v[1])] for v in np_.vertices],
                 "sides": [{"r": "inf" if s.r == INF else str(s.r),
                            "d": None if s.d is None else str(s.d)}
                           for s in np_.sides],
                 "weight": w.to_json_dict()}, lines)
    return 0


def cmd_ellipticity(args) -> int:
    p = load_pencil(args.pencil)
    grid = GridSpec(angular=args.grid_angular, directions=args.grid_angular,
                    tol=args.tol)
    rep = check_lemma21(p, grid)
    lines = [
        f"condition (i)  [A_2m nonzero on sphere]:  {rep.cond_i} (min {rep.min_a2m:.3e})",
        f"condition (ii) [A_2mu nonzero on sphere]: {rep.cond_ii} (min {rep.min_a2mu:.3e})",
        f"condition (iii) [symbol nonzero on slice]: {rep.cond_iii} (min {rep.min_abs:.3e})",
        f"N-elliptic with parameter: {rep.n_elliptic}",
        f"C_est = {rep.C_est:.6g}",
        f"witness (ii): xi = {np.array2string(rep.witness_ii, precision=6)}",
    ]
    _emit(args, {"cond_i": rep.cond_i, "cond_ii": rep.cond_ii,
                 "cond_iii": rep.cond_iii, "n_elliptic": rep.n_elliptic,
                 "C_est": rep.C_est, "min_a2m": rep.min_a2m,
                 "min_a2mu": rep.min_a2mu,
                 "witness_ii": rep.witness_ii.tolist()}, lines)
    return 0 if rep.n_elliptic else 1


def cmd_degeneration(args) -> int:
    p = load_pencil(args.pencil)
    q = q_polynomial(p)
    res = check_regular_degeneration(p)
    verdict = {True: "YES", False: "NO", None: "INDETERMINATE"}[res.regular]
    lines = [
        "Q(tau) ascending coefficients: " + ", ".join(_c(c) for c in q),
        "upper roots: " + (", ".join(_c(r) for r in res.upper_roots) or "none"),
        f"regular degeneration: {verdict}; k1 = {res.k1}",
    ]
    _emit(args, {"q_coeffs": [[c.real, c.imag] for c in q],
                 "upper_roots": [[r.real, r.imag] for r in res.upper_roots],
                 "regular": res.regular, "k1": res.k1}, lines)
    return 0 if res.regular else 1


def cmd_roots(args) -> int:
    p = load_pencil(args.pencil)
    xi_prime, lam = _parse_point(args, p.n)
    rs = tau_roots(p, xi_prime, lam)
    g = group_roots(p, xi_prime, lam)
    lines = ["upper roots: " + ", ".join(_c(r) for r in rs.upper),
             "lower roots: " + ", ".join(_c(r) for r in rs.lower),
             "bounded group: " + ", ".join(
                 _c(g.upper_roots[i]) for i in g.group_bounded),
             "large group:   " + ", ".join(
                 _c(g.upper_roots[i]) for i in g.group_large),
             f"k1 = {g.k1}; ambiguous = {g.ambiguous}",
             "bounded residuals: " + ", ".join(f"{r:.3e}" for r in g.residual_bounded),
             "large residuals:   " + ", ".join(f"{r:.3e}" for r in g.residual_large)]
    _emit(args, {"upper": [[r.real, r.imag] for r in rs.upper],
                 "lower": [[r.real, r.imag] for r in rs.lower],
                 "group_bounded": list(g.group_bounded),
                 "group_large": list(g.group_large),
                 "residual_bounded": list(g.residual_bounded),
                 "residual_large": list(g.residual_large),
                 "k1": g.k1, "ambiguous": g.ambiguous}, lines)
    return 0


def cmd_solve(args) -> int:
    p = load_pencil(args.pencil)
    xi_prime, lam = _parse_point(args, p.n)
    sols = halfline.solve(p, xi_prime, lam)
    payload = {}
    lines = []
    for sol in sols:
        payload[f"w{sol.j}"] = sol.to_json_dict()
        lines.append(f"w_{sol.j}: " + "; ".join(
            f"exp(i t {_c(t.tau)}) * poly{tuple(_c(c) for c in t.poly)}"
            for t in sol.terms) + (", via boundary solve" if sol.fallback else ""))
        norms = {l: halfline.l2_norm_deriv(sol, l) for l in range(p.m + 1)}
        payload[f"w{sol.j}_norms"] = norms
        lines.append("    norms ||D^l w||, l=0..m: "
                     + ", ".join(f"{v:.9g}" for v in norms.values()))
    _emit(args, payload, lines)
    return 0


def cmd_verify(args) -> int:
    p = load_pencil(args.pencil)
    suites = list(verify.SUITES) if args.suite == "all" else [args.suite]
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    summary = {}
    worst = 0
    for name in suites:
        rep = verify.run_suite(name, p, density=args.density,
                               lambda0=args.lambda0, threads=args.threads,
                               decades=args.grid_decades)
        if args.check_refinement and rep.verdict == "pass":
            _, rep2, drift = verify.refinement_drift(
                name, p, density=args.density, lambda0=args.lambda0,
                threads=args.threads, decades=args.grid_decades)
            rep.extras["refinement_drift"] = drift
            if drift >= 0.05:
                rep.verdict = "unstable"
        verify.write_csv(rep, out / f"{name}.csv")
        summary[name] = rep.summary()
        print(f"{name:12s} {rep.verdict:8s} band [{rep.min_ratio:.6g}, "
              f"{rep.max_ratio:.6g}]  records={len(rep.records)}")
        for reason in rep.reasons:
            print(f"    {reason}")
        if rep.verdict == "fail":
            worst = 1
    with open(out / "summary.json", "w") as fh:
        json.dump(summary, fh, indent=2, default=str)
    print(f"reports written to {out}/")
    return worst


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="pencilab",
        description="Newton-polygon calculus for parameter-elliptic pencils: "
                    "polygon geometry, weights, roots, half-line solutions, "
                    "and numerical certification of the two-sided estimates.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(sp):
        sp.add_argument("pencil", help="pencil description (JSON)")
        sp.add_argument("--lambda0", type=float, default=1.0,
                        help="lower end of the spectral parameter ray (default 1.0)")
        sp.add_argument("--tol", type=float, default=1e-6,
                        help="zero-detection tolerance (default 1e-6)")
        sp.add_argument("--grid-angular", type=int, default=720,
                        help="angular grid points for compact-set checks (default 720)")
        sp.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="machine output format; csv keeps the plain text "
                             "summary (default csv)")

    for name, fn in (("polygon", cmd_polygon), ("ellipticity", cmd_ellipticity),
                     ("degeneration", cmd_degeneration)):
        sp = sub.add_parser(name)
        common(sp)
        sp.set_defaults(func=fn)

    for name, fn in (("roots", cmd_roots), ("solve", cmd_solve)):
        sp = sub.add_parser(name)
        common(sp)
        sp.add_argument("--xi-prime", default="1.0",
                        help="tangential frequency, comma separated (default 1.0)")
        sp.add_argument("--lam", type=float, default=10.0,
                        help="spectral parameter (default 10.0)")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("verify")
    common(sp)
    sp.add_argument("--suite", default="all",
                    choices=("polygon", "trace", "thm41", "asymptotics",
                             "prop52", "halfspace", "all"))
    sp.add_argument("--grid-decades", type=int, default=3,
                    help="lambda range decades above lambda0 (default 3)")
    sp.add_argument("--density", type=int, default=1,
                    help="grid density multiplier (default 1)")
    sp.add_argument("--threads", type=int, default=1,
                    help="worker threads for sweeps (default 1)")
    sp.add_argument("--out", default="report",
                    help="output directory for CSV/JSON reports (default report/)")
    sp.add_argument("--check-refinement", action="store_true",
                    help="also rerun each suite at 2x density and flag "
                         "suites whose max ratio drifts by 5%% or more")
    sp.set_defaults(func=cmd_verify)
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help; keep its code.
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (PencilabError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
