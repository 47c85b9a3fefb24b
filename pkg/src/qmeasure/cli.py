"""Command-line front end.

Exit status: 0 success, 1 domain error, 2 usage error, 3 budget exhausted
(partial results are still written, with a warning on stderr).
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .contfrac import Dyadic, as_rational
from .errors import BudgetExhausted, DomainError, IllConditionedFit
from .fourier import coeff_table, fit_decay
from .measure import DEFAULT_BUDGET, kinney_dimension, mu_interval, sample_mu
from .qmark import box_exact, qmark_exact

EXIT_DOMAIN = 1
EXIT_BUDGET = 3


def fmt_real(x: float) -> str:
    return "%.17g" % x


def fmt_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


class Writer:
    def __init__(self, out, as_json: bool):
        self.out = out
        self.as_json = as_json

    def header(self, *cols):
        if not self.as_json:
            print(",".join(cols), file=self.out)

    def row(self, **fields):
        if self.as_json:
            print(json.dumps(fields), file=self.out)
        else:
            print(",".join(_cell(v) for v in fields.values()), file=self.out)


def _cell(v) -> str:
    if isinstance(v, float):
        return fmt_real(v)
    return str(v)


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


def cmd_qmark(args, w: Writer) -> int:
    y = qmark_exact(as_rational(args.x))
    if w.as_json:
        w.row(x=fmt_rational(as_rational(args.x)), qmark=str(y))
    else:
        print(y, file=w.out)
    return 0


def cmd_unqmark(args, w: Writer) -> int:
    y = Dyadic.from_string(args.y)
    x = box_exact(y)
    if w.as_json:
        w.row(y=str(y), x=fmt_rational(x))
    else:
        print(fmt_rational(x), file=w.out)
    return 0


def cmd_measure(args, w: Writer) -> int:
    m = mu_interval(as_rational(args.a), as_rational(args.b))
    if w.as_json:
        w.row(a=fmt_rational(as_rational(args.a)), b=fmt_rational(as_rational(args.b)), mass=str(m))
    else:
        print(m, file=w.out)
    return 0


def cmd_dim(args, w: Writer) -> int:
    code = 0
    try:
        est = kinney_dimension(args.tol, args.budget)
    except BudgetExhausted as exc:
        _warn(str(exc))
        est, code = exc.partial, EXIT_BUDGET
    w.header("dim", "err_bound", "integral", "integral_err")
    w.row(dim=est.dim, err_bound=est.err_bound, integral=est.integral.value,
          integral_err=est.integral.err_bound)
    return code


def _table(n0, n1, args):
    rows = coeff_table(n0, n1, args.tol, args.budget, method=args.method)
    failed = [r.n for r in rows if not r.converged]
    if failed:
        _warn(f"budget exhausted: {len(failed)} rows above tol (first n={failed[0]})")
    return rows, (EXIT_BUDGET if failed else 0)


def cmd_fourier(args, w: Writer) -> int:
    rows, code = _table(args.n_from, args.n_to, args)
    w.header("n", "re", "im", "abs", "err_bound")
    for r in rows:
        w.row(n=r.n, re=r.re, im=r.im, abs=r.abs, err_bound=r.err_bound)
    return code


def cmd_decay(args, w: Writer) -> int:
    if args.j_from < 0 or args.j_to <= args.j_from:
        raise DomainError("need 0 <= --from < --to")
    rows, code = _table(1 << args.j_from, (1 << (args.j_to + 1)) - 1, args)
    est = fit_decay(rows, args.j_from, args.j_to)
    w.header("j", "block_max")
    for j, mj in est.block_maxima:
        w.row(j=j, block_max=mj)
    w.header("eta", "intercept", "residual")
    w.row(eta=est.eta, intercept=est.intercept, residual=est.residual)
    return code


def cmd_sample(args, w: Writer) -> int:
    for x in sample_mu(args.seed, args.mass_tol, args.count):
        if w.as_json:
            w.row(x=fmt_rational(x), value=float(x))
        else:
            print(fmt_real(float(x)), file=w.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qmeasure",
        description="Minkowski's question mark function and its Stieltjes measure.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="one JSON object per line")
    budgeted = argparse.ArgumentParser(add_help=False)
    budgeted.add_argument("--tol", type=float, default=1e-6)
    budgeted.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    table = argparse.ArgumentParser(add_help=False)
    table.add_argument("--method", choices=("batched", "direct"), default="batched")

    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("qmark", parents=[common], help="?(x) for a rational x")
    p.add_argument("x")
    p.set_defaults(func=cmd_qmark)

    p = sub.add_parser("unqmark", parents=[common], help="inverse of ? on a dyadic y")
    p.add_argument("y", help="k/2^m, p/q with q a power of two, or a decimal")
    p.set_defaults(func=cmd_unqmark)

    p = sub.add_parser("measure", parents=[common], help="mu((a, b]) exactly")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("dim", parents=[common, budgeted], help="Kinney dimension of mu")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("fourier", parents=[common, budgeted, table], help="coefficient table")
    p.add_argument("--from", dest="n_from", type=int, required=True)
    p.add_argument("--to", dest="n_to", type=int, required=True)
    p.set_defaults(func=cmd_fourier)

    p = sub.add_parser("decay", parents=[common, budgeted, table], help="block-maxima decay fit")
    p.add_argument("--from", dest="j_from", type=int, required=True)
    p.add_argument("--to", dest="j_to", type=int, required=True)
    p.set_defaults(func=cmd_decay)

    p = sub.add_parser("sample", parents=[common], help="draw points distributed as mu")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--mass-tol", dest="mass_tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_sample)
    return parser


def main(argv=None, out=None) -> int:
    args = build_parser().parse_args(argv)
    w = Writer(out or sys.stdout, args.json)
    try:
        return args.func(args, w)
    except (DomainError, IllConditionedFit) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except BudgetExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
