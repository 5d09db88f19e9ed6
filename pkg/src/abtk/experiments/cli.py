"""Command-line entry point: `abtk <subcommand> [options]` or `python -m abtk`.

Every subcommand writes its result to `--out` in the chosen `--format` and prints a one-line status per target check. The exit code is 1 when any check fails. Options can also come from a YAML file given with `--config`; its keys are the option names with dashes replaced by underscores, and flags given on the command line win.
"""

import argparse
import math
import sys
from pathlib import Path
from typing import Optional

from abtk.experiments import drivers
from abtk.experiments.reports import ExperimentReport
from abtk.integrator.config import IntegratorConfig
from abtk.stability.region import (
    real_axis_crossings,
    root_locus,
    stability_indicator,
    stability_region,
)
from abtk.util.io import FORMATS, read_config


def _floats(text: str) -> list[float]:
    """Comma-separated numbers; `1/e` is accepted for the radius 1/e."""
    values = []
    for item in str(text).split(","):
        item = item.strip()
        values.append(1 / math.e if item.lower() in ("1/e", "e^-1") else float(item))
    return values


def _ints(text: str) -> list[int]:
    return [int(item) for item in str(text).split(",")]


def _common(parser: argparse.ArgumentParser, out: str) -> None:
    parser.add_argument("--config", type=Path, help="YAML file of option values.")
    parser.add_argument("--out", type=Path, default=Path(out), help=f"Output path (default: {out}).")
    parser.add_argument("--format", choices=FORMATS, default="csv", help="Output format (default: csv).")
    parser.add_argument("--n-jobs", type=int, default=1, dest="n_jobs", help="Worker processes (default: 1).")
    parser.add_argument("--verbose", action="store_true", help="Show progress bars.")


def _config_args(parser: argparse.ArgumentParser, q: int = 2, s: int = 3) -> None:
    parser.add_argument("--q", type=int, default=q, help=f"Expansion order (default: {q}).")
    parser.add_argument("--s", type=int, default=s, help=f"Number of contour nodes (default: {s}).")
    parser.add_argument("--alpha", type=float, default=1.0, help="Ratio tau/r (default: 1).")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="abtk",
        description="Stability and convergence experiments for the block Adams-Bashforth-type integrator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("region", help="Sample rho(R(z)) on a rectangle.")
    _config_args(p)
    p.add_argument("--re-min", type=float, default=-3.0, dest="re_min")
    p.add_argument("--re-max", type=float, default=1.0, dest="re_max")
    p.add_argument("--im-min", type=float, default=-2.0, dest="im_min")
    p.add_argument("--im-max", type=float, default=2.0, dest="im_max")
    p.add_argument("--resolution", type=int, default=101, help="Points per axis (default: 101).")
    p.add_argument("--check", action="store_true", help="Cross-check every point against the dense eigenvalues.")
    _common(p, "region.csv")

    p = sub.add_parser("locus", help="Trace the root-locus curves.")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--delta-q", type=int, choices=(0, 1), default=0, dest="delta_q")
    p.add_argument("--n-theta", type=int, default=256, dest="n_theta")
    _common(p, "locus.csv")

    p = sub.add_parser("radius", help="Parabolic radius table.")
    p.add_argument("--orders", type=_ints, default=[1, 2, 4, 6, 8, 10], help="Comma-separated orders.")
    p.add_argument("--delta-q", type=int, choices=(0, 1), default=0, dest="delta_q")
    _common(p, "radius.csv")

    p = sub.add_parser("max-order", help="Largest permissible order for given parabolic radii.")
    p.add_argument("--radii", type=_floats, default=[0.6, 0.5, 0.4, 1 / math.e, 0.3], help="Comma-separated radii; '1/e' allowed.")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--n-max", type=int, default=60, dest="n_max")
    p.add_argument("--delta-q", type=int, choices=(0, 1), default=0, dest="delta_q")
    p.add_argument("--plain-double", action="store_true", dest="plain_double", help="Round the polynomial terms to doubles before summing them.")
    _common(p, "max_order.csv")

    p = sub.add_parser("converge-ode", help="Allen-Cahn convergence table.")
    _config_args(p)
    p.add_argument("--steps", type=_ints, default=[128, 256, 512, 1024], help="Comma-separated doubling step counts.")
    p.add_argument("--eps", type=float, default=0.5)
    p.add_argument("--u0", type=float, default=0.01)
    p.add_argument("--T", type=float, default=1.0)
    p.add_argument("--init-alpha", action="store_true", dest="init_alpha", help="Initialise with B(alpha) instead of B(0).")
    _common(p, "convergence.csv")

    p = sub.add_parser("heat", help="Heat equation amplification radii and blow-up runs.")
    _config_args(p)
    p.add_argument("--h", type=float, default=math.pi / 32)
    p.add_argument("--factor", type=_floats, default=[0.9, 1.0, 1.1], dest="factors", help="Comma-separated multiples of the CFL step.")
    p.add_argument("--T", type=float, default=1.0)
    p.add_argument("--bc", choices=("dirichlet", "periodic"), default="dirichlet")
    _common(p, "heat.csv")

    p = sub.add_parser("verify-appendix", help="Random witnesses of the characteristic polynomial identities.")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-draws", type=int, default=100, dest="n_draws")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--q-max", type=int, default=6, dest="q_max")
    _common(p, "appendix.csv")

    return parser


def parse_args(argv: Optional[list[str]] = None) -> argparse.Namespace:
    """Parse once to find the subcommand and `--config`, then again with the config values as defaults."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config is None:
        return args

    config = {key.replace("-", "_"): value for key, value in read_config(args.config).items()}
    commands = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    subparser = commands.choices[args.command]
    known = {
        option.lstrip("-").replace("-", "_"): action
        for action in subparser._actions
        for option in action.option_strings
    }
    unknown = sorted(set(config) - set(known))
    if unknown:
        parser.error(f"unknown keys in {args.config}: {', '.join(unknown)}")
    defaults = {}
    for key, value in config.items():
        action = known[key]
        if action.type in (_ints, _floats):
            value = ",".join(str(v) for v in value) if isinstance(value, list) else str(value)
        if isinstance(value, str) and action.type is not None:
            value = action.type(value)
        defaults[action.dest] = value
    subparser.set_defaults(**defaults)
    return parser.parse_args(argv)


def _run(args: argparse.Namespace) -> ExperimentReport:
    if args.command == "region":
        cfg = IntegratorConfig(args.q, args.s, tau=1.0, alpha=args.alpha)
        grid = stability_region(
            cfg,
            (args.re_min, args.re_max),
            (args.im_min, args.im_max),
            args.resolution,
            n_jobs=args.n_jobs,
            check=args.check,
            verbose=args.verbose,
        )
        report = ExperimentReport("region", grid.params, tables={"region": grid.to_dataframe()})
        report.check("rho(0) = 1", 1.0, stability_indicator(0.0, cfg), 1e-12)
        return report
    if args.command == "locus":
        curve = root_locus(args.q, args.alpha, args.delta_q, args.n_theta, n_jobs=args.n_jobs, verbose=args.verbose)
        crossings = real_axis_crossings(args.q, args.delta_q, args.alpha)
        return ExperimentReport("locus", curve.params, tables={"locus": curve.to_dataframe(), "crossings": crossings})
    if args.command == "radius":
        return drivers.run_radius_table(args.orders, args.delta_q)
    if args.command == "max-order":
        return drivers.run_max_order_table(
            args.radii,
            delta_q=args.delta_q,
            tol=args.tol,
            n_max=args.n_max,
            compensated=not args.plain_double,
            n_jobs=args.n_jobs,
            verbose=args.verbose,
        )
    if args.command == "converge-ode":
        return drivers.ode_convergence_report(
            args.q,
            args.s,
            steps=args.steps,
            eps=args.eps,
            u0=args.u0,
            T=args.T,
            alpha=args.alpha,
            use_alpha=args.init_alpha,
            n_jobs=args.n_jobs,
            verbose=args.verbose,
        )
    if args.command == "heat":
        return drivers.run_heat_blowup(
            args.h, args.q, args.s, args.factors, T=args.T, alpha=args.alpha, bc=args.bc, n_jobs=args.n_jobs, verbose=args.verbose
        )
    if args.command == "verify-appendix":
        return drivers.run_appendix_witnesses(args.seed, args.n_draws, args.tol, args.q_max)
    raise ValueError(f"Unknown command '{args.command}'.")


def main(argv: Optional[list[str]] = None) -> int:
    args = parse_args(argv)
    report = _run(args)
    report.write(args.out, args.format)
    print(report.summary())
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
