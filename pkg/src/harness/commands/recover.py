"""
Recover command - lp minimization on matrix/vector files.

Usage:
    recover --matrix A.csv --y y.csv --p 0.5                    - noiseless
    recover --matrix A.csv --y y.csv --p 0.5 --epsilon 0.01 --x-ref x.csv --out x_hat.csv
"""

import json
import warnings

from utils.errors import ConvergenceWarning
from utils.matrix_io import read_matrix, read_vector, write_vector
from solver import SensingProblem, irls_recover
from . import register


def _configure(parser):
    parser.add_argument("--matrix", required=True, help="sensing matrix file")
    parser.add_argument("--y", required=True, help="observation vector file")
    parser.add_argument("--p", type=float, required=True, help="exponent in (0, 1]")
    parser.add_argument("--epsilon", type=float, default=0.0, help="noise budget (default 0)")
    parser.add_argument("--k", type=int, default=1, help="sparsity level stored with the problem")
    parser.add_argument("--x-ref", dest="x_ref", default=None,
                        help="reference signal file; fills objective_dominates_reference")
    parser.add_argument("--out", default=None, help="write x_hat here instead of into the JSON")


@register(
    "recover",
    description="Solve min ||x||_p s.t. ||y - A x||_2 <= epsilon with IRLS",
    usage="recover --matrix <file> --y <file> --p <p> [--epsilon E] [--x-ref <file>] [--out <file>]",
    configure=_configure,
)
def handle_recover(args):
    """Handle recover command."""
    prob = SensingProblem(A=read_matrix(args.matrix), y=read_vector(args.y), epsilon=args.epsilon, k=args.k)
    x_ref = read_vector(args.x_ref) if args.x_ref else None

    path = "noiseless" if prob.epsilon == 0.0 else f"epsilon = {prob.epsilon:g}"
    yield {"type": "progress", "text": f"Solving m={prob.m}, n={prob.n}, p={args.p:g} ({path})..."}

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", ConvergenceWarning)
        outcome = irls_recover(prob, args.p, x_ref=x_ref)
    for warning in caught:
        yield {"type": "progress", "text": f"⚠ {warning.message}"}

    result = outcome.to_dict(json_safe=True)
    if args.out:
        write_vector(args.out, outcome.x_hat)
        del result["x_hat"]
        result["x_hat_file"] = str(args.out)

    marker = "✓" if outcome.feasible else "✗"
    yield {"type": "progress", "text": f"{marker} residual {outcome.residual:.3e}, {outcome.iterations} iterations"}
    yield {"type": "done", "text": json.dumps(result, indent=2)}
