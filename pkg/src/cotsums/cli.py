"""Command-line front end.

Subcommands:

  compute   one value (dedekind, vasyunin, partial, sf, v1, v2, bound)
  figure1   the partial-sum profile C_1..C_{k-1} as CSV
  verify    a named verification sweep, JSON report
  bench     wall-time table for the headline operations

Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
3 I/O error.  All numeric output is deterministic given (inputs, --prec).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr

from .numtheory import parse_fraction
from .piecewise import PiecewisePoly
from .reciprocity import bound_v1
from .specialfn import PrecisionContext
from .sums import SumValue, dedekind_exact, partial_cot, partial_cot_profile, s_f, vasyunin
from .verify import DEFAULT_SEED, SUITES, SweepConfig, run_bench
from .vseries import V1Args, V2Args, v1_closed, v2_auto_blocks, v2_eval

__all__ = ["main"]

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_IO = 3

# per-suite (kmax, lsamples) defaults, sized to the documented sweeps
_SUITE_DEFAULTS = {
    "dedekind": (300, 50),
    "dft": (500, 50),
    "v1": (50, 50),
    "prop_mp": (200, 50),
    "mcc": (300, 5),
    "thm_mt": (300, 50),
}


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _fmt(x) -> str:
    return format(x, ".17g")


def _sum_json(sv: SumValue) -> dict:
    return {
        "value": _fmt(sv.value),
        "err_estimate": format(sv.err_estimate, ".3g"),
        "method": sv.method,
    }


def cmd_compute(args) -> int:
    ctx = PrecisionContext(args.prec)
    frac = parse_fraction(args.fraction)
    h, k = frac.numerator, frac.denominator
    kind = args.kind
    if kind == "dedekind":
        out = {"value": str(dedekind_exact(h, k))}
    elif kind == "vasyunin":
        out = _sum_json(vasyunin(h, k, ctx))
    elif kind == "partial":
        if args.l is None:
            raise ValueError("compute partial requires --l")
        out = _sum_json(partial_cot(h, k, args.l, ctx))
    elif kind == "v1":
        out = _sum_json(v1_closed(V1Args(h, k, args.l or 0), ctx))
    elif kind == "v2":
        beta = parse_fraction(args.beta) if args.beta else Fraction(0)
        v2args = V2Args(frac, beta)
        blocks = args.blocks or v2_auto_blocks(frac, beta)
        out = _sum_json(v2_eval(v2args, blocks, ctx))
        out["blocks"] = blocks
    elif kind == "sf":
        if not args.fn:
            raise ValueError("compute sf requires --fn <file.json>")
        with open(args.fn, encoding="utf-8") as fh:
            f = PiecewisePoly.from_json(fh.read())
        out = _sum_json(s_f(f, h, k, ctx))
    elif kind == "bound":
        rep = bound_v1(h, k)
        out = {
            "sum_small": repr(rep.sum_small),
            "sum_large": repr(rep.sum_large),
            "quotients": list(rep.quotients),
            "continuants": list(rep.continuants),
        }
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown kind {kind!r}")
    _emit(args, json.dumps(out))
    return EXIT_OK


def cmd_figure1(args) -> int:
    ctx = PrecisionContext(args.prec)
    frac = parse_fraction(args.fraction)
    h, k = frac.numerator, frac.denominator
    profile = partial_cot_profile(h, k, ctx)
    lines = ["ell,x,value"]
    with ctx.final():
        for ell in range(1, k):
            x = _fmt(gmpy2.div(mpfr(ell), k))
            lines.append(f"{ell},{x},{_fmt(profile[ell - 1])}")
    _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_verify(args) -> int:
    kmax_default, lsamples_default = _SUITE_DEFAULTS[args.suite]
    cfg = SweepConfig(
        kmax=args.kmax if args.kmax else kmax_default,
        lmode=args.lmode,
        lsamples=args.lsamples if args.lsamples else lsamples_default,
        prec=args.prec,
        seed=args.seed,
        out=args.out,
    )
    report = SUITES[args.suite](cfg)
    _emit(args, json.dumps(report, indent=2))
    return EXIT_OK if report["pass"] else EXIT_VERIFY


def cmd_bench(args) -> int:
    report = run_bench(prec=args.prec)
    width = max(len(row["name"]) for row in report["rows"])
    lines = []
    for row in report["rows"]:
        ms = row["seconds"] * 1000
        lines.append(f"{row['name']:<{width}}  {ms:>10.3f} ms  {row['value']}")
    lines.append(f"truncated/closed speed ratio: {report['truncated_over_closed']:.1f}")
    lines.append(f"deterministic: {report['deterministic']}")
    _emit(args, "\n".join(lines))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cotsums",
        description="Cotangent sums, reciprocity residuals, and continued-fraction bounds.",
    )
    parser.add_argument("--prec", type=int, default=128, help="working precision in bits (default 128)")
    parser.add_argument("--out", help="write output to this path instead of stdout")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for sampled sweeps")
    # Accept the global flags after the subcommand too; SUPPRESS keeps the
    # subparser from clobbering a value parsed before it.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prec", type=int, default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="compute a single value", parents=[common])
    c.add_argument(
        "kind",
        choices=["dedekind", "vasyunin", "partial", "sf", "v1", "v2", "bound"],
    )
    c.add_argument("fraction", help="the fraction h/k (for v2: the value a)")
    c.add_argument("--l", type=int, help="index ell (partial, v1)")
    c.add_argument("--beta", help="shift beta as p/q (v2)")
    c.add_argument("--blocks", type=int, help="truncation blocks (v2; default auto)")
    c.add_argument("--fn", help="piecewise function JSON file (sf)")
    c.set_defaults(func=cmd_compute)

    g = sub.add_parser("figure1", help="emit the C_ell profile of h/k as CSV", parents=[common])
    g.add_argument("fraction", help="the fraction h/k")
    g.set_defaults(func=cmd_figure1)

    v = sub.add_parser("verify", help="run a verification sweep", parents=[common])
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--kmax", type=int, help="sweep bound (default per suite)")
    v.add_argument("--lmode", choices=["all", "sample"], default="sample")
    v.add_argument("--lsamples", type=int, help="sampled ell count per pair")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="run the timing table", parents=[common])
    b.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
