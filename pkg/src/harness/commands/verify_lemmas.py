"""
Verify-lemmas command - randomized sweep over every inequality check.

Usage:
    verify-lemmas                                    - 1000 trials, seed 0
    verify-lemmas --trials 10000 --seed 3 --p-grid 0.1,0.5,0.9
    verify-lemmas --sizes 8,12,1;3,4,1 --matrix-trials 500
    verify-lemmas --sizes none                       - vector checks only
"""

import argparse
import json

from utils.view import banner, format_lemma_suite
from lemmas import DEFAULT_P_GRID, DEFAULT_SIZES, run_lemma_suite
from . import register


def parse_p_grid(text: str) -> tuple[float, ...]:
    try:
        grid = tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    if not grid or any(not 0.0 < p <= 1.0 for p in grid):
        raise argparse.ArgumentTypeError(f"every p must lie in (0, 1], got {text!r}")
    return grid


def parse_sizes(text: str) -> tuple[tuple[int, int, int], ...]:
    if text.strip().lower() == "none":
        return ()
    sizes = []
    for group in text.split(";"):
        try:
            m, n, k = (int(part) for part in group.split(","))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected m,n,k triples separated by ';', got {text!r}")
        if not 1 <= k <= m <= n or 2 * k > n:
            raise argparse.ArgumentTypeError(f"need 1 <= k <= m <= n and 2k <= n, got {group!r}")
        sizes.append((m, n, k))
    return tuple(sizes)


def _configure(parser):
    parser.add_argument("--trials", type=int, default=1000, help="vector-check trials (default 1000)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--p-grid", dest="p_grid", type=parse_p_grid, default=DEFAULT_P_GRID,
                        help="comma-separated exponents (default 0.1,...,0.9)")
    parser.add_argument("--sizes", type=parse_sizes, default=DEFAULT_SIZES,
                        help="m,n,k triples for the matrix checks, ';'-separated, or 'none'")
    parser.add_argument("--matrix-trials", dest="matrix_trials", type=int, default=None,
                        help="trials per size (default: --trials)")
    parser.add_argument("--json", action="store_true", help="print results as JSON")


@register(
    "verify-lemmas",
    description="Check every inequality of the proof chain on random inputs",
    usage="verify-lemmas [--trials N] [--seed S] [--p-grid p1,p2,...] [--sizes m,n,k;...] [--json]",
    configure=_configure,
)
def handle_verify_lemmas(args):
    """Handle verify-lemmas command."""
    lines: list[str] = []
    yield {"type": "progress", "text": banner(f"Lemma sweep: {args.trials} trials, seed {args.seed}")}
    results = run_lemma_suite(
        trials=args.trials,
        seed=args.seed,
        p_grid=args.p_grid,
        sizes=args.sizes,
        matrix_trials=args.matrix_trials,
        progress_callback=lines.append,
    )
    for line in lines:
        yield {"type": "progress", "text": f"  {line}"}

    if args.json:
        yield {"type": "done", "text": json.dumps(results, indent=2)}
    else:
        yield {"type": "done", "text": format_lemma_suite(results)}

    failing = [name for name, stats in results.items() if stats["violations"]]
    if failing:
        yield {"type": "violation", "text": f"✗ Violations in: {', '.join(failing)}"}
