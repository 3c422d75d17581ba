"""Command-line interface.

Usage:
    erwmem exact --moment mean-s --n 4 --p 1 --q 1
    erwmem sets --family phi --j 2 --n 3
    erwmem oracle --n 3 --mode generative --p 3/4
    erwmem simulate --n 50 --trials 100000 --checkpoints 10,50 --seed 1
    erwmem verify --max-n 8

Exit codes: 0 success, 1 verification mismatch, 2 invalid arguments or a
resource-limit refusal.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import families as fam
from . import moments as mom
from . import oracle as orc
from .errors import InvalidArgumentError, ResourceLimitError
from .montecarlo import run_simulation
from .poly import AlphaPolynomial
from .verify import run_verification
from .walk import WalkParams, as_rational


def rat(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _emit(fmt: str, payload, rows, columns, out) -> None:
    if fmt == "json":
        json.dump(payload, out, indent=2, ensure_ascii=False)
        out.write("\n")
        return
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\r\n")
    writer.writeheader()
    writer.writerows(rows)
    out.write(buf.getvalue())


def _params(args) -> WalkParams:
    p = args.p if args.p is not None else "1/2"
    return WalkParams(as_rational(p), as_rational(args.q))


# -- subcommands -------------------------------------------------------------

def cmd_exact(args, out) -> int:
    moment, route, n = args.moment, args.route, args.n
    q = as_rational(args.q)
    scaled = moment in ("mean-x", "mean-s")
    if moment in ("mean-x", "mean-s"):
        route = route or "paper"
        if route == "tower":
            raise InvalidArgumentError("route 'tower' applies to product and s-squared only")
        if route == "paper":
            poly = (mom.mean_increment if moment == "mean-x" else mom.mean_displacement)(n)
        else:
            fn = fam.explicit_mean_increment if moment == "mean-x" else fam.explicit_mean_displacement
            poly = fn(n, args.construction)
    elif moment == "product":
        route = route or "tower"
        a, b = args.a, args.b
        if a is None or b is None:
            raise InvalidArgumentError("--a and --b are required for product")
        a, b = min(a, b), max(a, b)
        if route == "tower":
            poly = mom.product_moment_tower(a, b)
        elif route == "paper":
            if a < 2:
                raise InvalidArgumentError("the published recursion covers indices >= 2 only")
            poly = mom.product_moment_paper(a - 1, b - 1)
        else:
            raise InvalidArgumentError("route 'explicit' applies to means only")
    else:
        route = route or "tower"
        if route == "tower":
            poly = mom.second_moment_displacement(n)
        elif route == "paper":
            poly = mom.second_moment_paper_form(n)
        else:
            raise InvalidArgumentError("route 'explicit' applies to means only")

    payload = {
        "moment": moment,
        "n": n,
        "route": route,
        "beta_scaled": scaled,
        "coefficients": poly.to_strings(),
        "polynomial": str(poly),
    }
    if moment == "product":
        payload.update(a=args.a, b=args.b)
    rows = [{"term": f"alpha^{j}", "exact": rat(c), "float": repr(float(c))}
            for j, c in enumerate(poly.coeffs)]
    if args.p is not None:
        params = WalkParams(as_rational(args.p), q)
        value = poly(params.alpha) * (params.beta if scaled else 1)
        payload.update(p=rat(params.p), q=rat(params.q), alpha=rat(params.alpha),
                       beta=rat(params.beta), value=rat(value), value_float=float(value))
        rows.append({"term": "value", "exact": rat(value), "float": repr(float(value))})
    _emit(args.format, payload, rows, ["term", "exact", "float"], out)
    return 0


def cmd_sets(args, out) -> int:
    family, j, n = args.family, args.j, args.n
    construction = args.construction
    if args.k is not None:
        if family not in ("omega", "psi"):
            raise InvalidArgumentError("--k applies to omega and psi families")
        build = fam.omega_family if family == "omega" else fam.psi_family
        result = build(j, args.k, n)
        formula = None
    else:
        if family in ("omega", "psi"):
            construction = "c1"
        base = "phi" if family in ("phi", "omega") else "theta"
        kind = {("phi", "recursive"): "phi_recursive", ("phi", "c1"): "phi_c1",
                ("theta", "recursive"): "theta_recursive", ("theta", "c1"): "psi_c1"}[(base, construction)]
        result = fam.build_family(kind, j, n)
        formula = fam.cardinality_formula(base, j, n) if j >= 1 else 1
    payload = {
        "family": family,
        "construction": construction,
        "j": j,
        "n": n,
        "k": args.k,
        "members": result.to_json(),
        "cardinality": len(result),
        "formula_cardinality": formula,
        "weight": rat(result.weight),
    }
    rows = [{"member": json.dumps(list(v)), "weight_exact": rat(fam.vector_weight(v)),
             "weight_float": repr(float(fam.vector_weight(v)))} for v in result]
    _emit(args.format, payload, rows, ["member", "weight_exact", "weight_float"], out)
    return 0


def cmd_oracle(args, out) -> int:
    params = _params(args)
    dist = orc.exact_distribution(args.n, params, args.mode, override_cap=args.override_cap)
    moments = [{"k": k,
                "mean_x": rat(orc.mean_x(dist, k)),
                "mean_s": rat(orc.mean_s(dist, k)),
                "second_moment_s": rat(orc.second_moment_s(dist, k))}
               for k in range(1, args.n + 1)]
    payload = {
        "n": args.n,
        "mode": args.mode,
        "p": rat(params.p),
        "q": rat(params.q),
        "total": rat(dist.total()),
        "atoms": dist.to_json(),
        "moments": moments,
        "distribution_of_S": {str(s): rat(w) for s, w in orc.distribution_of_s(dist, args.n).items()},
    }
    if args.a is not None and args.b is not None:
        payload["product"] = {"a": args.a, "b": args.b, "value": rat(orc.product(dist, args.a, args.b))}
    rows = [{"signs": atom["signs"], "prob": atom["prob"], "prob_float": repr(float(Fraction(atom["prob"])))}
            for atom in payload["atoms"]]
    _emit(args.format, payload, rows, ["signs", "prob", "prob_float"], out)
    return 0


def _checkpoints(text, n):
    if text is None:
        return [n]
    try:
        return [int(c) for c in text.split(",") if c.strip()]
    except ValueError:
        raise InvalidArgumentError(f"bad checkpoint list {text!r}") from None


def cmd_simulate(args, out) -> int:
    params = _params(args)
    seed = args.seed if args.seed is not None else 0
    summaries = run_simulation(params, args.n, args.trials, seed,
                               _checkpoints(args.checkpoints, args.n),
                               threads=args.threads, histogram=args.histogram)
    rows = [s.as_row() for s in summaries]
    payload = []
    for s, row in zip(summaries, rows):
        item = dict(row, mean=s.sample_mean_S, var=s.sample_var_S, stderr=s.stderr_mean,
                    mean_s2=s.sample_mean_S2, stderr_s2=s.stderr_mean_S2)
        if s.histogram is not None:
            item["histogram"] = {str(k): v for k, v in s.histogram.items()}
        payload.append(item)
    _emit(args.format, payload, rows, ["n", "trials", "mean", "var", "stderr", "seed", "p", "q"], out)
    return 0


def cmd_verify(args, out) -> int:
    if args.max_n < 2:
        raise InvalidArgumentError("--max-n must be >= 2")
    if args.max_n > orc.CAPS["history"]:
        raise ResourceLimitError(f"--max-n is capped at {orc.CAPS['history']}")
    report = run_verification(args.max_n)
    rows = [{"name": c["name"], "status": c["status"], "cases": c["cases"],
             "mismatches": len(c["mismatches"])} for c in report["checks"]]
    _emit(args.format, report, rows, ["name", "status", "cases", "mismatches"], out)
    return report["exit_code"]


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", help="repeat probability, e.g. 3/4 or 0.75")
    common.add_argument("--q", default="1", help="first-step probability (default 1)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int)
    common.add_argument("--threads", default="auto")

    parser = argparse.ArgumentParser(prog="erwmem", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", parents=[common], help="exact moments as alpha-polynomials")
    p.add_argument("--moment", required=True, choices=("mean-x", "mean-s", "product", "s-squared"))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--route", choices=("paper", "tower", "explicit"))
    p.add_argument("--construction", choices=("recursive", "c1"), default="recursive")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("sets", parents=[common], help="index families")
    p.add_argument("--family", required=True, choices=("phi", "theta", "omega", "psi"))
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, help="fixed coordinate sum (omega/psi only)")
    p.add_argument("--construction", choices=("recursive", "c1"), default="recursive")
    p.set_defaults(func=cmd_sets)

    p = sub.add_parser("oracle", parents=[common], help="exact distribution by enumeration")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=("history", "generative"), default="history")
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--override-cap", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo summaries")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--checkpoints")
    p.add_argument("--histogram", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", parents=[common], help="full cross-check report")
    p.add_argument("--max-n", type=int, default=8)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if getattr(args, "command", None) == "exact" and args.moment != "product" and args.n is None:
        print("erwmem: error: --n is required", file=sys.stderr)
        return 2
    if getattr(args, "command", None) == "exact" and args.moment == "product" and args.n is None:
        args.n = args.b
    try:
        return args.func(args, out)
    except (InvalidArgumentError, ResourceLimitError) as exc:
        print(f"erwmem: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
