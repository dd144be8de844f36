"""Command-line front end.

Exit codes: 0 success, 1 computational failure (budget, hypothesis,
unsupported input, failing acceptance criterion), 2 usage error.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction

from . import acceptance, auxiliary, bounds, hilbert_samuel as hs, prime_distribution as pd
from .errors import ArakountError, ComputationError, InvalidParams, InvalidPoint, UsageError
from .finite_field_geometry import ENUM_BUDGET, FqHypersurface, weighted_count
from .heights import (
    ProjectivePoint,
    arakelov_height,
    hypersurface_height_interval,
    naive_poly_height,
    weil_height,
)
from .parser import parse_polynomial
from .rational_points import DEFAULT_MAX_B, enumerate_S
from .reporting import emit_report


def _rational(text):
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc
    return value


def _positive_int(text):
    try:
        v = int(float(text)) if "e" in text.lower() else int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if v <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _point(text):
    body = text.strip().strip("[]()")
    sep = ":" if ":" in body else ","
    try:
        coords = [Fraction(c) for c in body.split(sep)]
    except ValueError as exc:
        raise InvalidPoint(f"cannot parse point {text!r}") from exc
    return ProjectivePoint(coords)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--field", default="Q", help="Q, Qi or Qsqrt:D")
    common.add_argument("--grh", action="store_true", help="use the explicit GRH envelopes")
    common.add_argument("--budget-enum", type=_positive_int, default=DEFAULT_MAX_B, help="largest B for enumeration")
    common.add_argument("--budget-matrix", type=_positive_int, default=auxiliary.MATRIX_BUDGET)
    common.add_argument("--budget-degree", type=_positive_int, default=auxiliary.D_CAP)
    common.add_argument("--budget-points", type=_positive_int, default=ENUM_BUDGET, help="largest q^n for F_q enumeration")

    parser = argparse.ArgumentParser(prog="arakount", description="Heights, counts and bounds for the global determinant method.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("heights", parents=[common], help="heights of a point or a hypersurface")
    p.add_argument("--curve")
    p.add_argument("--point", help="coordinates such as 1:2:3")

    p = sub.add_parser("hilbert", parents=[common], help="Hilbert-Samuel series and the lower bound on Q")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mu", type=int, default=None, help="multiplicity (default: --delta, else 1)")
    p.add_argument("--delta", type=int, default=None)
    p.add_argument("--r", type=int, default=10)

    p = sub.add_parser("count-fq", parents=[common], help="points and multiplicities over F_p")
    p.add_argument("--curve", required=True)
    p.add_argument("--prime", type=int, required=True)

    p = sub.add_parser("primes", parents=[common], help="prime ideals and Chebyshev sums")
    p.add_argument("--x", type=float, default=100.0)
    p.add_argument("--n", type=int, default=2, help="dimension used for kappa2")

    p = sub.add_parser("bounds", parents=[common], help="explicit constants and log-scale bounds")
    p.add_argument("--n", type=int)
    p.add_argument("--delta", type=int)
    p.add_argument("--B", type=_rational, required=True)
    p.add_argument("--curve", help="hypersurface supplying n, delta and H_X")
    p.add_argument("--D", type=int, help="degree for the determinant right-hand side")

    p = sub.add_parser("enumerate", parents=[common], help="rational points of bounded height on a plane curve")
    p.add_argument("--curve", required=True)
    p.add_argument("--bound", type=_rational, required=True)

    p = sub.add_parser("aux", parents=[common], help="minimal auxiliary curve through S(X;B)")
    p.add_argument("--curve", required=True)
    p.add_argument("--bound", type=_rational, required=True)
    p.add_argument("--prime", type=int, help="also report determinant valuations at this prime")
    p.add_argument("--pmax", type=int, default=0, help="scan reductions up to this prime")
    p.add_argument("--D", type=int, help="evaluation degree for the valuation report")

    p = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    p.add_argument("--only", type=int, action="append", help="criterion number (repeatable)")
    return parser


# --- commands ---------------------------------------------------------------


def cmd_heights(args):
    if not args.curve and not args.point:
        raise InvalidParams("give --curve or --point")
    out = {"command": "heights"}
    if args.point:
        P = _point(args.point)
        hv = weil_height(P)
        out["point"] = P
        out["H"] = hv.H
        out["h"] = hv.h
        out["h_arakelov"] = arakelov_height(P)
        out["gap"] = abs(hv.h - out["h_arakelov"])
        out["gap_bound"] = 0.5 * math.log(len(P.coords))
    if args.curve:
        f = parse_polynomial(args.curve)
        hv = naive_poly_height(f)
        iv = hypersurface_height_interval(f)
        out["curve"] = f
        out["n"] = f.n
        out["delta"] = f.degree
        out["H_X"] = hv.H
        out["h_X"] = hv.h
        out["arakelov_interval"] = [iv.lo, iv.hi]
        out["c1"] = bounds.constant_c1(f.n) if f.n >= 2 else None
    return out, None


def cmd_hilbert(args):
    mu = args.mu if args.mu is not None else (args.delta or 1)
    prof = hs.HilbertProfile(args.n, mu, args.delta)
    if args.r < 1:
        raise InvalidParams("--r must be at least 1")
    series = hs.QSeries(prof)
    ab = hs.appendix_lower_bound(args.n, mu, args.r, series=series)
    qs = [series.q(m) for m in range(args.r + 1)]
    out = {
        "command": "hilbert",
        "n": args.n,
        "mu": mu,
        "r": args.r,
        "H": [hs.hs_value(prof, s) for s in range(min(args.r, 20) + 1)],
        "q": qs,
        "Q_inclusive": series.Q(args.r, hs.INCLUSIVE),
        "Q_strict": series.Q(args.r, hs.STRICT),
        "appendix_bound": ab.bound,
        "bound_holds": ab.holds,
    }
    table = (["m", "q"], list(enumerate(qs)))
    return out, table


def cmd_count_fq(args):
    f = parse_polynomial(args.curve)
    surface = FqHypersurface.from_polynomial(f, args.prime)
    if surface.p ** surface.n > args.budget_points:
        raise ComputationError(f"q^n = {surface.p}^{surface.n} exceeds --budget-points")
    res = weighted_count(surface)
    out = {
        "command": "count-fq",
        "curve": f,
        "p": args.prime,
        "count": res.count,
        "weighted": res.weighted,
        "singular": {k: v for k, v in sorted(res.singular.items())},
        "checks": res.checks,
    }
    names = ["x", "y", "z", "w"][: surface.nvars] if surface.nvars <= 4 else [f"x{i}" for i in range(surface.nvars)]
    rows = [list(pt) + [mu] for pt, mu in sorted(res.per_point.items())]
    return out, (names + ["multiplicity"], rows)


def cmd_primes(args):
    K = pd.number_field(args.field)
    ideals = pd.prime_ideals_up_to(K, args.x)
    sums = pd.chebyshev_sums(K, args.x)
    out = {
        "command": "primes",
        "field": K.label,
        "x": args.x,
        "ideal_count": len(ideals),
        "theta": sums.theta,
        "psi": sums.psi,
        "phi": sums.phi,
    }
    if args.grh:
        env = pd.grh_envelopes(K, args.x, sums)
        out["eps1"], out["eps2"], out["eps3"] = env.eps1, env.eps2, env.eps3
        out["checks"] = env.checks
        kap = pd.kappa_bounds(K, args.n)
        out["kappa1"], out["kappa2"] = kap.kappa1, kap.kappa2
    return out, (["p", "residue_degree", "norm"], [tuple(r) for r in ideals])


def cmd_bounds(args):
    K = pd.number_field(args.field)
    H_X = None
    n, delta = args.n, args.delta
    if args.curve:
        f = parse_polynomial(args.curve)
        n = n or f.n
        delta = delta or f.degree
        H_X = naive_poly_height(f).H
    if n is None or delta is None:
        raise InvalidParams("give --n and --delta, or --curve")
    B = float(args.B)
    out = {
        "command": "bounds",
        "n": n,
        "delta": delta,
        "B": args.B,
        "field": K.label,
        "grh": args.grh,
        "c1": bounds.constant_c1(n),
        "a_n": bounds.a_n(n, delta),
        "c_ndelta": bounds.c_ndelta(n, delta),
    }
    if args.grh:
        c = bounds.constants_c2_c3(n, K, delta=delta)
        out.update(log_c2=c.log_c2, log_c3=c.log_c3, log_c3prime=c.log_c3prime, kappa1=c.kappa1, kappa2=c.kappa2)
    else:
        out.update(log_c2=None, log_c3=None, log_c3prime=None)
    cor1 = bounds.aux_degree_bound(n, delta, B, H_X or 1, K, "cor1", grh=args.grh)
    out["log_bound"] = cor1.log_value if args.grh else None
    reports = {"cor1": cor1}
    if H_X is not None:
        h = math.log(H_X)
        reports["theorem"] = bounds.aux_degree_bound(n, delta, B, H_X, K, "theorem", grh=args.grh)
        reports["cor2"] = bounds.aux_degree_bound(n, delta, B, H_X, K, "cor2", grh=args.grh)
        reports["siegel"] = bounds.siegel_report(n, delta, h, B, K)
        reports["nongeom_mass"] = bounds.nongeom_report(n, delta, h, K)
        if args.D is not None:
            iv = hypersurface_height_interval(f)
            reports["determinant_rhs"] = bounds.determinant_rhs(n, delta, args.D, iv, (), K)
    if n == 2:
        reports["t61"] = bounds.curve_count_bound(delta, B, K, "t61", grh=args.grh)
        reports["t62"] = bounds.curve_count_bound(delta, B, K, "t62", grh=args.grh)
    out["reports"] = reports
    table = (["report", "log_value"], [(k, r.log_value) for k, r in reports.items()])
    return out, table


def cmd_enumerate(args):
    f = parse_polynomial(args.curve)
    S = enumerate_S(f, args.bound, budget=args.budget_enum)
    out = {"command": "enumerate", "curve": f, "bound": args.bound, "count": len(S), "points": S.points}
    return out, (["x", "y", "z"], [p.coords for p in S.points])


def cmd_aux(args):
    f = parse_polynomial(args.curve)
    S = enumerate_S(f, args.bound, budget=args.budget_enum)
    aux = auxiliary.minimal_auxiliary(f, S.points, cap=args.budget_degree, budget=args.budget_matrix)
    out = {
        "command": "aux",
        "curve": f,
        "bound": args.bound,
        "count": len(S),
        "auxiliary": aux,
        "certificate_valid": aux.verify(f),
        "bezout_bound": f.degree * aux.D,
    }
    if args.grh and f.degree >= 2:
        rep = bounds.aux_degree_bound(f.n, f.degree, max(float(args.bound), 1.0), 1, pd.number_field(args.field), "cor1")
        out["log_D_min"] = math.log(aux.D)
        out["log_bound_cor1"] = rep.log_value
        out["within_bound"] = math.log(aux.D) <= rep.log_value
    if args.pmax:
        from .rational_points import good_prime_scan

        out["reductions"] = {str(p): good for p, good in good_prime_scan(f, args.pmax)}
    if args.prime:
        from .rational_points import reduction_classes

        D = args.D or 2
        summary = []
        for key, pts in reduction_classes(S.points, args.prime).items():
            r = min(len(pts), hs.rank_r(f.n, D))
            vals = [v for _, v in auxiliary.determinant_experiment(pts[:r], args.prime, D)]
            summary.append({"class": list(key), "r": r, "min_valuation": min(vals) if vals else None, "minors": len(vals)})
        out["valuations"] = summary
    table = (["g", "D"], [(aux.g.to_text(), aux.D)])
    return out, table


def cmd_verify(args):
    results = acceptance.run_all(args.seed, only=set(args.only) if args.only else None)
    for r in results:
        print(acceptance.format_line(r), file=sys.stderr)
    out = {
        "command": "verify",
        "seed": args.seed,
        "passed": all(r.passed for r in results),
        "criteria": [r._asdict() for r in results],
    }
    table = (["number", "name", "passed", "seconds"], [(r.number, r.name, r.passed, round(r.seconds, 3)) for r in results])
    return out, table


COMMANDS = {
    "heights": cmd_heights,
    "hilbert": cmd_hilbert,
    "count-fq": cmd_count_fq,
    "primes": cmd_primes,
    "bounds": cmd_bounds,
    "enumerate": cmd_enumerate,
    "aux": cmd_aux,
    "verify": cmd_verify,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out, table = COMMANDS[args.command](args)
        data = emit_report(out, args.format, table)
    except UsageError as exc:
        print(f"arakount: error: {exc}", file=sys.stderr)
        return 2
    except ComputationError as exc:
        print(f"arakount: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ArakountError as exc:
        print(f"arakount: {exc}", file=sys.stderr)
        return 1
    sys.stdout.buffer.write(data)
    sys.stdout.flush()
    if args.command == "verify" and not out["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
