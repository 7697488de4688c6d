"""Terminal tables for bound sets, trial summaries and lemma sweeps.

Every function returns a string; callers decide where it goes.
"""

import math

from tabulate import tabulate

BANNER_WIDTH = 80

BOUND_FIELDS = [
    ("C(p)", "c_p"), ("C0", "c0"), ("C1", "c1"),
    ("D(p)", "d_p"), ("D0", "d0"), ("D1", "d1"),
    ("C_bar(p)", "c_bar"), ("C0_bar", "c0_bar"), ("C1_bar", "c1_bar"),
    ("D_bar(p)", "d_bar"), ("D0_bar", "d0_bar"), ("D1_bar", "d1_bar"),
]


def banner(title: str) -> str:
    """Section header in the `=====` style."""
    rule = "=" * BANNER_WIDTH
    return f"{rule}\n{title}\n{rule}"


def _num(value) -> str:
    if value is None or (isinstance(value, float) and not math.isfinite(value)):
        return "n/a"
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def format_bound_set(bounds) -> str:
    """Key-value table of a BoundSet."""
    rows = [("p", _num(bounds.p)), ("delta_2k", _num(bounds.delta)), ("regime", bounds.regime)]
    rows += [(label, _num(getattr(bounds, attr))) for label, attr in BOUND_FIELDS]
    rows.append(("valid", "yes" if bounds.valid else "no"))
    if bounds.reason:
        rows.append(("reason", bounds.reason))
    return tabulate(rows, tablefmt="plain")


def format_summary(summary: dict) -> str:
    """Grid table of a Monte-Carlo summary (see harness.summarize)."""
    counts = [
        ("Trials", summary["trials"]),
        ("Pass", summary["passes"]),
        ("Hypotheses unmet", summary["hypotheses_unmet"]),
        ("Violation", summary["violations"]),
        ("Pass rate", _num(summary["pass_rate"])),
        ("Exact recoveries", summary["exact_recoveries"]),
    ]
    lines = [tabulate(counts, headers=["Metric", "Value"], tablefmt="grid")]

    slacks = summary.get("min_slack", {})
    if slacks:
        rows = [(name, _num(value)) for name, value in sorted(slacks.items())]
        lines.append(tabulate(rows, headers=["Bound", "Min slack"], tablefmt="grid"))
    return "\n\n".join(lines)


def format_lemma_suite(results: dict) -> str:
    """Grid table of run_lemma_suite output, one row per check."""
    rows = []
    for name, stats in results.items():
        rows.append((
            name,
            stats["trials"],
            stats["passes"],
            stats["hypotheses_unmet"],
            stats["violations"],
            _num(stats["min_slack"]),
        ))
    headers = ["Check", "Trials", "Pass", "Unmet", "Violations", "Min slack"]
    return tabulate(rows, headers=headers, tablefmt="grid")
