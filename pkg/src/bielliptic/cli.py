"""Command line entry point: ``bielliptic <subcommand> [options]``."""

from __future__ import annotations

import argparse
import json
import sys

from .errors import InvalidInput
from .report import SUBCOMMAND_CHECKS, RunConfig, emit_report, run_checks

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


def _csv(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bielliptic", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file; rationals as strings such as \"-1/3\"")
    common.add_argument("--quartic", type=_csv, help="a,c,d,e of y^2 = a x^4 + c x^2 + d x + e")
    common.add_argument("--eps", type=_csv, help="four power-basis coordinates of eps")
    common.add_argument("--p", type=_csv, help="quadratic p(x), highest degree first")
    common.add_argument("--q", type=_csv, help="quadratic q(x), highest degree first")
    common.add_argument("--height", type=int, help="search height bound")
    common.add_argument("--primes", type=_csv, help="primes to test locally instead of the default set")
    common.add_argument("--depth-cap", type=int, help="maximum Hensel/residue-tree depth")
    common.add_argument("--assume-rank-zero", action=argparse.BooleanOptionalAction, default=None,
                        help="grant rank J(Q) = 0 (default: granted)")
    common.add_argument("--format", choices=("human", "machine"))
    common.add_argument("--timings", action=argparse.BooleanOptionalAction, default=None,
                        help="include wall times (machine output is then not byte-stable)")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("reproduce", "resolvent", "fourcover", "local", "surface", "search"):
        sub.add_parser(name, parents=[common], help=f"run the {name} checks")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    data: dict = {}
    if args.config:
        with open(args.config) as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise InvalidInput("config must be a JSON object")
    cfg = RunConfig.from_mapping(data)
    overrides = {}
    for key in ("quartic", "eps", "p", "q", "height", "primes", "depth_cap", "assume_rank_zero",
                "format", "timings"):
        val = getattr(args, key)
        if val is not None:
            overrides[key] = val
    return RunConfig.from_mapping(overrides, base=cfg)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        cfg = config_from_args(args)
    except (InvalidInput, ValueError, OSError) as exc:
        print(f"bielliptic: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = run_checks(cfg, SUBCOMMAND_CHECKS[args.command])
    code = emit_report(report, cfg.format, sys.stdout, timings=cfg.timings)
    if report.resource_limited:
        return EXIT_LIMIT
    return EXIT_FAIL if code else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
