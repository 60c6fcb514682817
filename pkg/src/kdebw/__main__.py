"""CLI entry point for kdebw.

Usage:
    kdebw simulate --dist gaussian --n 1000 --seed 1 --out sample.csv
    kdebw select --input sample.csv --validation held.csv --methods c,amise,pit,lik
    kdebw curve --input sample.csv --out curve.csv
    kdebw density --input sample.csv --method c --out density.csv
    kdebw efficiency --input BTC-USD.csv --year 2017 --stats posprob,info,hurst
    kdebw study --dists gaussian,mixture --seeds 20 --out study.json

Exit codes: 0 success, 2 usage error, 1 computation error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Sequence

from kdebw.cli.options import parseGrid, parseMethods, parseNames
from kdebw.datasets.simulation import Distribution
from kdebw.exceptions import ConfigurationError, KdebwError
from kdebw.logging import configureLogging
from kdebw.logging.config import CLI_LOGGER

logger = logging.getLogger(CLI_LOGGER)

_DISTRIBUTIONS = tuple(d.value for d in Distribution)
_STATS = ("posprob", "info", "hurst")


def _addInput(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--input", type=Path, required=True, help="Sample CSV, or price CSV with --year"
    )
    parser.add_argument(
        "--year",
        type=int,
        default=None,
        help="Treat --input as a price CSV and use the returns of this calendar year",
    )


def buildParser() -> argparse.ArgumentParser:
    """Argument parser with every subcommand."""
    parser = argparse.ArgumentParser(
        prog="kdebw",
        description="Kernel density bandwidth selection and market-efficiency statistics",
    )
    parser.add_argument("--config", type=Path, default=None, help="YAML settings file")
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default=None,
        help="Logging level (default: from settings, WARNING)",
    )
    parser.add_argument("--workers", type=int, default=None, help="Threads for grid evaluation")

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    # simulate command
    simParser = subparsers.add_parser("simulate", help="Write a simulated sample CSV")
    simParser.add_argument("--dist", choices=_DISTRIBUTIONS, required=True)
    simParser.add_argument("--n", type=int, default=1000, help="Sample size (default: 1000)")
    simParser.add_argument("--seed", type=int, default=0)
    simParser.add_argument("--out", type=Path, required=True)
    simParser.set_defaults(handler="cmdSimulate")

    # select command
    selectParser = subparsers.add_parser("select", help="Selected bandwidths and their complexity")
    _addInput(selectParser)
    selectParser.add_argument("--validation", type=Path, default=None, help="Validation CSV")
    selectParser.add_argument(
        "--methods",
        type=parseMethods,
        default=parseMethods("c"),
        help="Comma-separated subset of c,amise,pit,lik (default: c)",
    )
    selectParser.add_argument("--nu", type=int, default=None, help="PIT lag (default: 22)")
    selectParser.add_argument(
        "--out", type=Path, default=None, help="JSON report (default: stdout)"
    )
    selectParser.set_defaults(handler="cmdSelect")

    # curve command
    curveParser = subparsers.add_parser("curve", help="E_h, P_h, C_h against h")
    _addInput(curveParser)
    curveParser.add_argument(
        "--points", type=int, default=None, help="Grid points up to h_p (default: 500)"
    )
    curveParser.add_argument("--out", type=Path, required=True)
    curveParser.set_defaults(handler="cmdCurve")

    # density command
    densityParser = subparsers.add_parser("density", help="Tabulate a kernel density estimate")
    _addInput(densityParser)
    choice = densityParser.add_mutually_exclusive_group(required=True)
    choice.add_argument("--bandwidth", type=float, default=None)
    choice.add_argument("--method", type=parseMethods, default=None, help="c, amise, pit or lik")
    densityParser.add_argument("--validation", type=Path, default=None)
    densityParser.add_argument("--nu", type=int, default=None)
    densityParser.add_argument("--grid", type=parseGrid, default=None, help="LO:HI:N")
    densityParser.add_argument("--true-dist", choices=_DISTRIBUTIONS, default=None)
    densityParser.add_argument("--out", type=Path, required=True)
    densityParser.set_defaults(handler="cmdDensity")

    # efficiency command
    effParser = subparsers.add_parser("efficiency", help="Market-efficiency statistics per year")
    effParser.add_argument("--input", type=Path, required=True, help="Price CSV")
    effParser.add_argument("--year", type=int, default=None, help="Calendar year (default: all)")
    effParser.add_argument(
        "--stats",
        type=parseNames(_STATS),
        default=list(_STATS),
        help="Comma-separated subset of posprob,info,hurst",
    )
    effParser.add_argument("--h-grid", type=parseGrid, default=None, help="LO:HI:N (geometric)")
    effParser.add_argument("--null-trials", type=int, default=None, help="Default: 10000")
    effParser.add_argument("--seed", type=int, default=None, help="Null-band seed (default: 0)")
    effParser.add_argument("--out", type=Path, default=None, help="JSON report (default: stdout)")
    effParser.set_defaults(handler="cmdEfficiency")

    # study command
    studyParser = subparsers.add_parser("study", help="Selectors on repeated simulated samples")
    studyParser.add_argument(
        "--dists", type=parseNames(_DISTRIBUTIONS), default=list(_DISTRIBUTIONS)
    )
    studyParser.add_argument("--seeds", type=int, default=20, help="Samples per distribution")
    studyParser.add_argument("--seed", type=int, default=0, help="First seed")
    studyParser.add_argument("--n", type=int, default=1000, help="Training size")
    studyParser.add_argument("--m", type=int, default=1000, help="Validation size")
    studyParser.add_argument(
        "--methods", type=parseMethods, default=parseMethods("c,amise,pit,lik")
    )
    studyParser.add_argument("--nu", type=int, default=None)
    studyParser.add_argument("--out", type=Path, default=None, help="JSON report (default: stdout)")
    studyParser.set_defaults(handler="cmdStudy")

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Main CLI entry point."""
    parser = buildParser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    if args.command is None:
        parser.print_help(sys.stderr)
        return 2

    configureLogging(level=args.log_level or "WARNING", includeTimestamp=False)

    from kdebw.cli import commands

    handler = getattr(commands, args.handler)
    try:
        return int(handler(args))
    except KeyboardInterrupt:
        print("\nAborted.", file=sys.stderr)
        return 130
    except ConfigurationError as e:
        print(f"Usage error: {e}", file=sys.stderr)
        return 2
    except KdebwError as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as e:
        logger.debug("unexpected failure", exc_info=True)
        print(f"Error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
