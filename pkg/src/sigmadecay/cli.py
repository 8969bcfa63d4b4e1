"""Command-line entry point: ``sigmadecay <subcommand> ...``.

Exit status is 0 when every check passes, 1 when a check fails and 2 for
usage errors (bad flags, unreadable config, inadmissible parameters).
"""
import argparse
import sys
from pathlib import Path

import numpy as np

from . import harness
from .generators import make_bump, make_gaussian
from .grid import GridSpec
from .inequalities import PittParams, pitt_admissible, pitt_ratio
from .model import ModelParams, ParameterError, characteristic_roots
from .rates import Family, RateQuery, Term, critical_exponent, rate

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# grid and base scale for the pitt sweep, per dimension
PITT_GRIDS = {1: (4096, 64.0), 2: (512, 32.0), 3: (128, 24.0)}
PITT_DILATIONS = (0.5, 1.0, 2.0)
PITT_TOLERANCE = 0.01


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt_complex(z):
    z = complex(z)
    if z.imag == 0:
        return f"{z.real:.10g}"
    return f"{z.real:.10g}{z.imag:+.10g}j"


def cmd_roots(args):
    p = ModelParams(args.sigma, args.delta, args.n)
    r = characteristic_roots(p, args.xi)
    print(f"lambda1 = {_fmt_complex(r.lambda1)}")
    print(f"lambda2 = {_fmt_complex(r.lambda2)}")
    print(f"degenerate = {r.degenerate}")
    return EXIT_OK


def cmd_rates(args):
    p = ModelParams(args.sigma, args.delta, args.n)
    family = Family(args.family)
    if family is Family.PROPOSITION or args.a is not None or args.j is not None:
        pairs = [(args.a or 0.0, args.j or 0)]
    else:
        pairs = [(0.0, 0), (p.sigma, 0), (0.0, 1)]
    print(f"{'estimate':<18} {'term':<4} {'exponent':>9} {'n >':>8}  {'data space':<28} status")
    for a, j in pairs:
        for term in Term:
            r = rate(RateQuery(p, args.m, a, j, family, term))
            space = r.data_space_u0 if term is Term.U0 else r.data_space_u1
            status = "valid" if r.valid else "; ".join(r.violations)
            print(f"{r.estimate:<18} {term.value:<4} {r.exponent:>9.4f} "
                  f"{r.dimension_bound:>8.4g}  {space:<28} {status}")
    return EXIT_OK


def cmd_critical(args):
    print(f"{critical_exponent(args.n, args.m, args.sigma, args.delta):.4f}")
    return EXIT_OK


def cmd_pitt(args):
    p = (PittParams(args.r1, args.r2, args.s1, args.s2, args.n) if args.s1 is not None
         else PittParams.balanced(args.r1, args.r2, args.s2, args.n))
    ok, violations = pitt_admissible(p)
    if not ok:
        raise UsageError("inadmissible: " + "; ".join(violations))
    if args.n not in PITT_GRIDS:
        raise UsageError(f"n must be 1, 2 or 3 for the ratio sweep, got {args.n}")
    N, L = PITT_GRIDS[args.n]
    grid = GridSpec(args.n, args.points or N, args.half_width or L)
    ratios = []
    for lam in PITT_DILATIONS:
        if args.family == "gaussian":
            f = make_gaussian(grid, 1.0 / lam)
        else:
            f = make_bump(grid, 3.0 / lam)
        ratios.append(pitt_ratio(f, p))
    mean = float(np.mean(ratios))
    spread = (max(ratios) - min(ratios)) / mean
    plancherel = p.r1 == p.r2 == 2 and p.s1 == p.s2 == 0
    tag = "Parseval" if plancherel else f"spread {spread:.2e} over dilations"
    print(f"admissible; ratio {mean:.3f} ({tag})")
    if args.verbose:
        for lam, r in zip(PITT_DILATIONS, ratios):
            print(f"  lambda = {lam:g}: {r:.10g}")
    return EXIT_OK if spread <= PITT_TOLERANCE else EXIT_FAIL


def _write(text, out):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def cmd_evolve(args):
    try:
        cfg = harness.load_config(args.config)
    except harness.ConfigError as exc:
        raise UsageError(f"{args.config}: {exc}") from None
    report = harness.run_experiment(cfg)
    fmt = args.format or cfg.output_format
    out = args.out or cfg.output_path or None
    _write(harness.render(report, fmt), out)
    if out not in (None, "-"):
        for o in report.observables:
            slope = "bounded" if o.slope is None else f"slope {o.slope:+.4f}"
            theory = "" if o.theory is None else f" theory {o.theory:+.4f}"
            print(f"{o.verdict:<10} {o.name}: {slope}{theory}")
        for q in report.inequalities:
            print(f"{q.verdict:<10} inequality:{q.name}")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_report(args):
    try:
        data = harness.read_report(args.input)
    except (OSError, ValueError) as exc:
        raise UsageError(f"{args.input}: {exc}") from None
    _write(harness.rerender(data, args.format), args.out)
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="sigmadecay", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def model_args(p, n_required=True):
        p.add_argument("--sigma", type=float, required=True)
        p.add_argument("--delta", type=float, required=True)
        p.add_argument("--n", type=int, required=n_required, default=1)

    p = sub.add_parser("roots", help="characteristic roots at one frequency")
    model_args(p, n_required=False)
    p.add_argument("--xi", type=float, required=True)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("rates", help="decay exponents and validity")
    p.add_argument("--family", choices=[f.value for f in Family], required=True)
    model_args(p)
    p.add_argument("--m", type=float, required=True)
    p.add_argument("--a", type=float)
    p.add_argument("--j", type=int, choices=(0, 1))
    p.set_defaults(func=cmd_rates)

    p = sub.add_parser("critical", help="critical power-nonlinearity exponent")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=float, required=True)
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("evolve", help="run a config-driven experiment")
    p.add_argument("--config", required=True)
    p.add_argument("--out", help="report path; '-' for stdout (default: from config)")
    p.add_argument("--format", choices=("csv", "json"))
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("pitt", help="weighted Fourier inequality: admissibility and ratios")
    p.add_argument("--r1", type=float, required=True)
    p.add_argument("--r2", type=float, required=True)
    p.add_argument("--s1", type=float, help="default: fixed by the balance condition")
    p.add_argument("--s2", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", choices=("gaussian", "bump"), default="gaussian")
    p.add_argument("--points", type=int)
    p.add_argument("--half-width", type=float)
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_pitt)

    p = sub.add_parser("report", help="re-render a saved report")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--format", choices=("csv", "json"), required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (UsageError, ParameterError, ValueError) as exc:
        msg = " ".join(str(exc).split())
        print(f"sigmadecay: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    except harness.ExperimentError as exc:
        print(f"sigmadecay: numerical failure: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
