"""
Montecarlo command - repeated solve-and-check trials for the error bounds.

Usage:
    montecarlo --config data/general_noiseless.cfg
    montecarlo --config data/special_n4k.cfg --trials 50 --seed 3 --format jsonl
    montecarlo --m 8 --n 12 --k 2 --p-rule pbar_fraction:1 --epsilon 0.01 --report out.csv

Flags override the config file; the file overrides built-in defaults.
The report goes to --report, or to LPREC_REPORT_DIR when omitted.
"""

from utils import settings
from utils.view import banner, format_summary
from harness.config import load_config
from harness.montecarlo import run_montecarlo
from harness.report import REPORT_FORMATS, emit_report
from . import register

# CLI dest -> config key
_OVERRIDES = {
    "m": "M",
    "n": "N",
    "k": "K",
    "p_rule": "P_RULE",
    "epsilon": "EPSILON",
    "ensemble": "ENSEMBLE",
    "signal": "SIGNAL",
    "trials": "TRIALS",
    "seed": "SEED",
    "delta_source": "DELTA_SOURCE",
    "sampled_trials": "SAMPLED_TRIALS",
    "regime": "REGIME",
    "fresh_matrix": "FRESH_MATRIX",
    "workers": "WORKERS",
}


def _configure(parser):
    parser.add_argument("--config", default=None, help="KEY=value experiment file")
    parser.add_argument("--m", type=int)
    parser.add_argument("--n", type=int)
    parser.add_argument("--k", type=int)
    parser.add_argument("--p-rule", dest="p_rule", help="fixed:<p> or pbar_fraction:<alpha>")
    parser.add_argument("--epsilon", type=float)
    parser.add_argument("--ensemble")
    parser.add_argument("--signal")
    parser.add_argument("--trials", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--delta-source", dest="delta_source", help="exact, user:<delta> or sampled")
    parser.add_argument("--sampled-trials", dest="sampled_trials", type=int)
    parser.add_argument("--regime")
    parser.add_argument("--fresh-matrix", dest="fresh_matrix", action="store_true", default=None,
                        help="new matrix and delta for every trial")
    parser.add_argument("--workers", type=int, help="trial threads (default LPREC_WORKERS)")
    parser.add_argument("--report", default=None, help="report path")
    parser.add_argument("--format", dest="fmt", choices=REPORT_FORMATS, default="csv")
    parser.add_argument("--quiet", action="store_true", help="no progress bar")


@register(
    "montecarlo",
    description="Run seeded trials and check recovery errors against the bounds",
    usage="montecarlo [--config <file>] [--m M --n N --k K ...] [--report <file>] [--format csv|jsonl] "
          "[--workers W] [--fresh-matrix] [--quiet]",
    configure=_configure,
)
def handle_montecarlo(args):
    """Handle montecarlo command."""
    overrides = {key: getattr(args, dest) for dest, key in _OVERRIDES.items()}
    cfg = load_config(args.config, overrides)

    yield {"type": "progress", "text": banner(
        f"Monte-Carlo: m={cfg.m} n={cfg.n} k={cfg.k} p_rule={cfg.p_rule} "
        f"epsilon={cfg.epsilon:g} delta={cfg.delta_source} regime={cfg.regime}"
    )}

    lines: list[str] = []
    records, summary = run_montecarlo(cfg, show_progress=not args.quiet, progress_callback=lines.append)
    for line in lines:
        yield {"type": "progress", "text": f"  {line}"}

    report = args.report or settings.report_dir() / (
        f"montecarlo_m{cfg.m}_n{cfg.n}_k{cfg.k}_seed{cfg.seed}.{args.fmt}"
    )
    path = emit_report(records, report, args.fmt)

    yield {"type": "progress", "text": format_summary(summary)}
    yield {"type": "done", "text": f"✓ Report written to {path}"}
    if summary["violations"]:
        yield {"type": "violation", "text": f"✗ {summary['violations']} trial(s) violate the error bounds"}
