"""Command-line front end.

    harvest sweep --config <file|preset:name> [--jobs N] [--out <csv>]
    harvest verify <suite>
    harvest schema

Exit codes: 0 ok, 1 configuration error, 2 numerical failure (a sweep row
that did not converge, or a verification suite with failing checks).
"""

from __future__ import annotations

import argparse
import sys

from .config import ConfigError, load_config, schema_text
from .sweep import run_sweep
from .verify import SUITES, run_verify


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harvest",
        description="Detector-pair entanglement sweeps and symmetry checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="run a parameter sweep to CSV")
    p_sweep.add_argument("--config", required=True,
                         help="config file path, or preset:<name>")
    p_sweep.add_argument("--jobs", type=int, default=1,
                         help="worker processes (default 1)")
    p_sweep.add_argument("--out", default=None,
                         help="output CSV path (overrides output.path)")

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", help=f"one of: {', '.join(sorted(SUITES))}")

    sub.add_parser("schema", help="print the config key reference")
    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help; treat anything else as a usage error.
        return 0 if exc.code == 0 else 1

    if args.command == "schema":
        print(schema_text())
        return 0

    if args.command == "verify":
        if args.suite not in SUITES:
            print(f"unknown suite {args.suite!r}; available: {', '.join(sorted(SUITES))}",
                  file=sys.stderr)
            return 1
        return 0 if run_verify(args.suite) else 2

    # sweep
    try:
        cfg = load_config(args.config)
        if args.jobs < 1:
            raise ConfigError("--jobs must be >= 1")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    path, failed = run_sweep(cfg, jobs=args.jobs, out=args.out)
    print(f"wrote {path} ({cfg.steps} rows, {failed} failed)")
    return 2 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
