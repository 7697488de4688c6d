#!/usr/bin/env python3
"""
lp-recovery CLI

Usage:
    python src/harness/run.py bounds --p 0.4 --delta 0.8
    python src/harness/run.py ric --matrix A.csv --k 4
    python src/harness/run.py recover --matrix A.csv --y y.csv --p 0.5
    python src/harness/run.py gen --m 6 --n 10 --k 2 --seed 7 --out-dir data/instance
    python src/harness/run.py verify-lemmas --trials 1000
    python src/harness/run.py montecarlo --config data/general_noiseless.cfg
    python src/harness/run.py --help

Exit codes: 0 success, 1 usage or input error, 2 an inequality was violated.
"""

import sys
import argparse
from pathlib import Path

# Add src/ to path for imports (works for both direct run and test import)
src_path = Path(__file__).parent.parent
if str(src_path) not in sys.path:
    sys.path.insert(0, str(src_path))

from utils.constants import EXIT_OK, EXIT_USAGE
from harness.commands import add_subparsers, dispatch, exit_code, list_commands


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with EXIT_USAGE."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    epilog = "\n".join(f"  {cmd['name']:<14} {cmd['description']}" for cmd in list_commands())
    parser = _Parser(
        prog="lprec",
        description="lp-minimization sparse recovery: bounds, RIC, solver and checks",
        epilog=f"commands:\n{epilog}",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    add_subparsers(parser)
    return parser


def render(event: dict) -> None:
    """Print one handler event; errors go to stderr."""
    if event["type"] == "error":
        print(f"Error: {event['text']}", file=sys.stderr, flush=True)
    else:
        print(event["text"], flush=True)


def cli_dispatch(argv: list[str] | None = None) -> int:
    """
    Parse argv, run the subcommand and return its exit code.

    Args:
        argv: arguments without the program name (default sys.argv[1:])

    Returns:
        0 on success, 1 on usage or input errors, 2 on a violated inequality
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # --help exits 0, usage errors exit EXIT_USAGE
        return EXIT_OK if e.code in (None, 0) else int(e.code)

    seen: set[str] = set()
    for event in dispatch(args):
        seen.add(event["type"])
        render(event)
    return exit_code(seen)


def main():
    sys.exit(cli_dispatch())


if __name__ == "__main__":
    main()
