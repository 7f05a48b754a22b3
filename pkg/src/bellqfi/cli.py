"""Command-line entry point: model sweeps, derivative scans, verification.

Exit codes: 0 success, 1 bad arguments or config, 2 I/O failure,
3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .sweep import SweepConfig, config_from, load_config, run_derivative_scan, \
    run_ising_sweep, run_two_mode_sweep
from .verify import verify_suite

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_VERIFY = 3


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def _add_sweep_flags(parser):
    parser.add_argument("--config", help="JSON file with the same keys as the flags")
    parser.add_argument("--model", choices=("ising", "twomode"))
    parser.add_argument("--n", action="append", type=int,
                        help="system size; repeat for several curves")
    parser.add_argument("--u-min", type=float, dest="u_min")
    parser.add_argument("--u-max", type=float, dest="u_max")
    parser.add_argument("--steps", type=int)
    parser.add_argument("--out")
    parser.add_argument("--threads", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--correlator-bound-cap", type=int, dest="correlator_bound_cap",
                        help="largest N for which the exact correlator-sum bound is evaluated")
    parser.add_argument("--bound-max-order", type=int, dest="bound_max_order",
                        help="truncate the correlator sum at this order (still a valid bound)")
    parser.add_argument("--convention", choices=("scaled", "raw"),
                        help="two-mode coupling convention (u/N or raw u)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bellqfi",
                     description="Bell correlators, QFI bounds and model sweeps")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="ground-state sweep over the coupling grid")
    _add_sweep_flags(sweep)

    deriv = sub.add_parser("derivative", help="QFI derivative scan with Bell-onset flags")
    _add_sweep_flags(deriv)

    verify = sub.add_parser("verify", help="run the property batteries")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--out", help="write the JSON report here")
    verify.add_argument("--inject-failure", action="store_true",
                        help="add a failing check (negative control)")
    return parser


def _effective_config(args) -> SweepConfig:
    sources: dict = {}
    if args.config:
        sources.update(load_config(args.config))
    for key in ("model", "u_min", "u_max", "steps", "out", "threads", "seed",
                "correlator_bound_cap", "bound_max_order", "convention"):
        value = getattr(args, key, None)
        if value is not None:
            sources[key] = value
    if getattr(args, "n", None):
        sources["n"] = tuple(args.n)
    try:
        cfg = config_from(sources)
    except TypeError as exc:
        raise CliError(str(exc)) from exc
    if not cfg.n:
        raise CliError("no system sizes given; pass --n or put \"n\" in the config")
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        if args.command == "verify":
            passed, report = verify_suite(seed=args.seed, out_path=args.out,
                                          inject_failure=args.inject_failure)
            for entry in report["checks"]:
                status = "pass" if entry["passed"] else "FAIL"
                print(f"{status}  {entry['check']}: {entry['detail']}")
            return EXIT_OK if passed else EXIT_VERIFY

        cfg = _effective_config(args)
        grid = cfg.u_grid()
        if args.command == "sweep":
            if cfg.model == "ising":
                run_ising_sweep(cfg.n, grid, cfg.out, threads=cfg.threads,
                                correlator_bound_cap=cfg.correlator_bound_cap,
                                bound_max_order=cfg.bound_max_order)
            else:
                run_two_mode_sweep(cfg.n, grid, cfg.out, threads=cfg.threads,
                                   convention=cfg.convention,
                                   bound_max_order=cfg.bound_max_order)
        else:
            run_derivative_scan(cfg.n, grid, cfg.out, model=cfg.model,
                                threads=cfg.threads, convention=cfg.convention)
        print(f"wrote {cfg.out}")
        return EXIT_OK
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
