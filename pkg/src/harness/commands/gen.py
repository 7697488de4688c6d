"""
Gen command - write a seeded instance to files.

Usage:
    gen --m 6 --n 10 --k 2 --seed 7 --out-dir data/instance
    gen --m 6 --n 10 --k 2 --epsilon 0.01 --signal compressible --out-dir data/noisy

Writes A.csv, y.csv and x.csv (the reference signal) to the output directory.
"""

from pathlib import Path

from utils.matrix_io import write_matrix, write_vector
from solver import ENSEMBLES, SIGNALS, make_instance
from . import register


def _configure(parser):
    parser.add_argument("--m", type=int, required=True)
    parser.add_argument("--n", type=int, required=True)
    parser.add_argument("--k", type=int, required=True)
    parser.add_argument("--epsilon", type=float, default=0.0, help="||e||_2 of the added noise")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--ensemble", choices=ENSEMBLES, default="gaussian")
    parser.add_argument("--signal", choices=SIGNALS, default="sparse")
    parser.add_argument("--out-dir", dest="out_dir", required=True)


@register(
    "gen",
    description="Generate a seeded instance (A, y, x_ref) as files",
    usage="gen --m <m> --n <n> --k <k> [--epsilon E] [--seed S] [--ensemble E] [--signal S] --out-dir <dir>",
    configure=_configure,
)
def handle_gen(args):
    """Handle gen command."""
    prob, x_ref = make_instance(args.m, args.n, args.k, noise_eps=args.epsilon, seed=args.seed,
                                ensemble=args.ensemble, signal=args.signal)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_matrix(out_dir / "A.csv", prob.A)
    write_vector(out_dir / "y.csv", prob.y)
    write_vector(out_dir / "x.csv", x_ref)

    yield {"type": "progress", "text": f"  ✓ A.csv ({prob.m}x{prob.n}), y.csv, x.csv"}
    yield {"type": "done", "text": f"Instance written to {out_dir}"}
