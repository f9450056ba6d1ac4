"""Command-line experiment driver.

    vnlab list
    vnlab <experiment> [--<param> <value> ...] [--seed S] [--out PATH]
                       [--format {json,csv}] [--tol-abs X] [--tol-rel Y]

Exit status is 0 iff every assertion of the run passed.  Reports echo the full
parameter set so any table or figure can be regenerated from the JSON alone.
"""

from __future__ import annotations

import argparse
import sys

from .experiments import list_experiments, run, validate_params
from .numkit import Tolerance, set_default_tolerance


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vnlab",
        description="numerical laboratory for modular theory, localization "
                    "and local channels")
    sub = parser.add_subparsers(dest="command")
    sub.add_parser("list", help="show registered experiments")
    for name, exp in list_experiments().items():
        p = sub.add_parser(name, help=exp.description)
        for key, (typ, default) in exp.schema.items():
            p.add_argument(f"--{key.replace('_', '-')}", dest=key, type=typ,
                           default=None, metavar=typ.__name__.upper(),
                           help=f"default {default}")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None, help="write the report here")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--tol-abs", type=float, default=None)
        p.add_argument("--tol-rel", type=float, default=None)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None or args.command == "list":
        width = max(len(n) for n in list_experiments())
        for name, exp in list_experiments().items():
            schema = ", ".join(f"{k}={d}" for k, (_, d) in exp.schema.items())
            print(f"{name:<{width}}  {exp.description}  [{schema}]")
        return 0

    if args.tol_abs is not None or args.tol_rel is not None:
        set_default_tolerance(Tolerance(abs=args.tol_abs or 1e-10,
                                        rel=args.tol_rel or 1e-8))
    schema = list_experiments()[args.command].schema
    overrides = {k: getattr(args, k) for k in schema
                 if getattr(args, k) is not None}
    try:
        params = validate_params(args.command, overrides)
        report = run(args.command, params, seed=args.seed, out=args.out,
                     fmt=args.format)
    except (KeyError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    print(report.to_json() if args.format == "json" else report.to_csv())
    for a in report.assertions:
        status = "pass" if a.passed else "FAIL"
        print(f"  [{status}] {a.name}: value={a.value!r} "
              f"{'<=' if a.cmp == 'le' else '>='} {a.tolerance!r}",
              file=sys.stderr)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
