"""
RIC command - delta_k of a matrix file.

Usage:
    ric --matrix A.csv --k 4                            - exact, by enumeration
    ric --matrix A.csv --k 4 --mode sampled --trials 5000 --seed 1
"""

import json
from math import comb

from utils.matrix_io import read_matrix
from ric import exact_ric, normalize_columns, sampled_ric_lower_bound
from . import register

MODES = ("exact", "sampled")


def _configure(parser):
    parser.add_argument("--matrix", required=True, help="matrix file (see docs/file_formats.md)")
    parser.add_argument("--k", type=int, required=True, help="order of the constant")
    parser.add_argument("--mode", choices=MODES, default="exact")
    parser.add_argument("--trials", type=int, default=10_000, help="subsets drawn in sampled mode")
    parser.add_argument("--seed", type=int, default=None, help="seed for sampled mode")
    parser.add_argument("--cap", type=int, default=None, help="enumeration cap (default LPREC_ENUM_CAP)")
    parser.add_argument("--workers", type=int, default=None, help="threads (default LPREC_WORKERS)")
    parser.add_argument("--normalize", action="store_true", help="scale columns to unit norm first")


@register(
    "ric",
    description="Compute delta_k exactly or a sampled lower bound",
    usage="ric --matrix <file> --k <k> [--mode exact|sampled] [--trials N] [--seed S] [--normalize]",
    configure=_configure,
)
def handle_ric(args):
    """Handle ric command."""
    A = read_matrix(args.matrix)
    if args.normalize:
        A = normalize_columns(A).entries

    n = A.shape[1]
    if args.mode == "exact":
        yield {"type": "progress", "text": f"Enumerating {comb(n, args.k):,} column subsets of order {args.k}..."}
        estimate = exact_ric(A, args.k, cap=args.cap, workers=args.workers)
    else:
        yield {"type": "progress", "text": f"Sampling {args.trials:,} column subsets of order {args.k}..."}
        estimate = sampled_ric_lower_bound(A, args.k, args.trials, seed=args.seed)

    yield {"type": "done", "text": json.dumps(estimate.to_dict(json_safe=True), indent=2)}
