"""
Bounds command - constants of the error bounds for one (p, delta_2k).

Usage:
    bounds --p 0.4 --delta 0.8                     - BoundSet as JSON
    bounds --p 0.4 --delta 0.8 --regime special_n_le_4k --table
"""

import json

from utils.constants import REGIME_GENERAL, REGIMES
from utils.view import format_bound_set
from bounds import bound_set
from . import register


def _configure(parser):
    parser.add_argument("--p", type=float, required=True, help="exponent in (0, 1]")
    parser.add_argument("--delta", type=float, required=True, help="delta_2k in [0, 1)")
    parser.add_argument("--regime", choices=REGIMES, default=REGIME_GENERAL,
                        help="which family `valid` refers to (default: general)")
    parser.add_argument("--table", action="store_true", help="print a table instead of JSON")


@register(
    "bounds",
    description="Compute C(p), D(p) and the error-bound constants",
    usage="bounds --p <p> --delta <delta> [--regime general|special_n_le_4k] [--table]",
    configure=_configure,
)
def handle_bounds(args):
    """Handle bounds command."""
    result = bound_set(args.p, args.delta, args.regime)
    if args.table:
        yield {"type": "done", "text": format_bound_set(result)}
    else:
        yield {"type": "done", "text": json.dumps(result.to_dict(json_safe=True), indent=2)}
