"""
Monte-Carlo driver for the error bounds.

Each trial draws an instance, picks p by the configured rule, solves with
IRLS and checks the solver output against the error bounds. Trial i draws
from default_rng(SeedSequence([seed, i])), so any trial can be replayed on
its own; the shared matrix draws from SeedSequence([seed]).

Usage:
    from harness import load_config, run_montecarlo

    records, summary = run_montecarlo(load_config("data/general_noiseless.cfg"))
"""

import math
import warnings
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Callable

import numpy as np
from tqdm import tqdm

from utils.constants import (
    DELTA_MIN,
    EXACT_RECOVERY_TOL,
    REGIME_SPECIAL,
    STATUS_PASS,
    STATUS_UNMET,
    STATUS_VIOLATION,
)
from utils.errors import ConvergenceWarning, RankDeficiencyError
from bounds import bound_set, p_bar, p_bar_special
from lemmas import check_theorem_bounds, snap_estimate
from lemmas.types import CheckReport
from ric import RicEstimate, exact_ric, sampled_ric_lower_bound
from solver import irls_recover, lp_norm_pth_power, make_instance, make_matrix
from .types import DELTA_EXACT, DELTA_SAMPLED, P_RULE_FIXED, ExperimentConfig, TrialRecord

GENERAL_BOUNDS = ("theorem_pnorm", "theorem_2norm")
SPECIAL_BOUNDS = ("theorem_pnorm_bar", "theorem_2norm_bar")

# report name -> TrialRecord field suffix
_FIELD_SUFFIX = {
    "theorem_pnorm": "pnorm",
    "theorem_2norm": "2norm",
    "theorem_pnorm_bar": "pnorm_bar",
    "theorem_2norm_bar": "2norm_bar",
}


def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, trial]))


def obtain_delta(cfg: ExperimentConfig, A: np.ndarray, rng: np.random.Generator,
                 workers: int = 1) -> RicEstimate:
    """
    delta_2k for A from the configured source.

    Raises:
        EnumerationCapError: exact source with binomial(n, 2k) above the cap
    """
    order = 2 * cfg.k
    source = cfg.delta_source
    if source.kind == DELTA_EXACT:
        return exact_ric(A, order, workers=workers)
    if source.kind == DELTA_SAMPLED:
        return sampled_ric_lower_bound(A, order, cfg.sampled_trials, seed=int(rng.integers(2 ** 63)))
    return RicEstimate.user_supplied(source.value, order)


def select_p(cfg: ExperimentConfig, delta: RicEstimate) -> float | None:
    """
    Exponent for a trial, or None when the rule needs a delta below 1 and has none.

    pbar_fraction:alpha gives alpha * p_bar(delta), or alpha * p_bar_special(delta)
    in the n <= 4k regime, with delta raised to sqrt(2)/2 first.
    """
    if cfg.p_rule.kind == P_RULE_FIXED:
        return cfg.p_rule.value
    if not delta.usable:
        return None
    delta_used = max(delta.delta, DELTA_MIN)
    limit = p_bar_special(delta_used) if cfg.regime == REGIME_SPECIAL else p_bar(delta_used)
    return cfg.p_rule.value * limit


def classify(reports: list[CheckReport], regime: str) -> tuple[str, str | None]:
    """
    Trial status from its bound reports.

    Any report whose hypotheses held and that failed makes a violation. A pass
    needs every bound of the configured regime to have its hypotheses met and
    hold; anything else is hypotheses_unmet.
    """
    failed = [r.name for r in reports if r.violated]
    if failed:
        return STATUS_VIOLATION, f"violated: {', '.join(failed)}"

    family = SPECIAL_BOUNDS if regime == REGIME_SPECIAL else GENERAL_BOUNDS
    relevant = [r for r in reports if r.name in family]
    if relevant and all(r.hypotheses_met for r in relevant):
        return STATUS_PASS, None
    notes = sorted({r.note for r in relevant if r.note})
    return STATUS_UNMET, "; ".join(notes) or None


def _unsolved(trial: int, delta: RicEstimate, p: float | None, note: str) -> TrialRecord:
    nan = math.nan
    return TrialRecord(
        trial=trial,
        delta_estimate=delta.delta,
        delta_used=delta.delta,
        delta_kind=delta.kind,
        p_used=nan if p is None else p,
        feasible=False,
        objective_dominates_reference=False,
        converged=False,
        exact_recovery=False,
        error_p_pow=nan,
        error_2_pow=nan,
        bound_rhs_pnorm=nan,
        bound_rhs_2norm=nan,
        bound_rhs_pnorm_bar=nan,
        bound_rhs_2norm_bar=nan,
        slack_pnorm=nan,
        slack_2norm=nan,
        slack_pnorm_bar=nan,
        slack_2norm_bar=nan,
        status=STATUS_UNMET,
        note=note,
    )


def run_trial(cfg: ExperimentConfig, trial: int,
              shared: tuple[np.ndarray, RicEstimate] | None = None) -> TrialRecord:
    """
    One seeded trial.

    Args:
        cfg: experiment
        trial: index; selects the random stream
        shared: (A, delta) reused across trials, or None to draw both here
    """
    rng = _trial_rng(cfg.seed, trial)
    if shared is None:
        A = make_matrix(cfg.m, cfg.n, cfg.ensemble, rng)
        delta = obtain_delta(cfg, A, rng)
    else:
        A, delta = shared

    prob, x_ref = make_instance(cfg.m, cfg.n, cfg.k, noise_eps=cfg.epsilon, seed=rng,
                                signal=cfg.signal, A=A)

    p = select_p(cfg, delta)
    if p is None or not delta.usable:
        return _unsolved(trial, delta, p, f"delta_{2 * cfg.k} = {delta.delta:.6g}: RIP fails at order 2k")

    try:
        out = irls_recover(prob, p, x_ref=x_ref)
    except RankDeficiencyError as e:
        return _unsolved(trial, delta, p, str(e))

    delta_used = max(delta.delta, DELTA_MIN)
    bounds = bound_set(p, delta_used, cfg.regime)
    reports = check_theorem_bounds(prob, x_ref, out.x_hat, bounds, p, delta_kind=delta.kind)
    status, note = classify(reports, cfg.regime)
    if not out.converged:
        note = "; ".join(filter(None, [note, "solver did not converge"]))

    h = x_ref - snap_estimate(x_ref, out.x_hat)
    raw_error = float(np.linalg.norm(x_ref - out.x_hat))

    columns = {}
    for suffix in _FIELD_SUFFIX.values():
        columns[f"bound_rhs_{suffix}"] = math.nan
        columns[f"slack_{suffix}"] = math.nan
    for report in reports:
        suffix = _FIELD_SUFFIX[report.name]
        columns[f"bound_rhs_{suffix}"] = report.rhs
        if report.hypotheses_met:
            columns[f"slack_{suffix}"] = report.slack

    return TrialRecord(
        trial=trial,
        delta_estimate=delta.delta,
        delta_used=delta_used,
        delta_kind=delta.kind,
        p_used=p,
        feasible=out.feasible,
        objective_dominates_reference=bool(out.objective_dominates_reference),
        converged=out.converged,
        exact_recovery=raw_error <= EXACT_RECOVERY_TOL * max(1.0, float(np.linalg.norm(x_ref))),
        error_p_pow=lp_norm_pth_power(h, p),
        error_2_pow=float(np.linalg.norm(h)) ** p,
        status=status,
        note=note,
        **columns,
    )


def summarize(records: list[TrialRecord]) -> dict:
    """
    Counts, pass rate, exact recoveries and the smallest slack per bound.

    The result does not depend on the order of `records`.
    """
    counts = {STATUS_PASS: 0, STATUS_UNMET: 0, STATUS_VIOLATION: 0}
    slacks: dict[str, float] = {}
    for record in records:
        counts[record.status] += 1
        for suffix in _FIELD_SUFFIX.values():
            value = getattr(record, f"slack_{suffix}")
            if math.isfinite(value):
                key = f"theorem_{suffix}"
                slacks[key] = min(slacks.get(key, math.inf), value)

    total = len(records)
    return {
        "trials": total,
        "passes": counts[STATUS_PASS],
        "hypotheses_unmet": counts[STATUS_UNMET],
        "violations": counts[STATUS_VIOLATION],
        "pass_rate": counts[STATUS_PASS] / total if total else math.nan,
        "exact_recoveries": sum(1 for r in records if r.exact_recovery),
        "min_slack": slacks,
    }


def run_montecarlo(
    cfg: ExperimentConfig,
    show_progress: bool = False,
    progress_callback: Callable[[str], None] | None = None,
) -> tuple[list[TrialRecord], dict]:
    """
    Run every trial of `cfg`.

    Args:
        cfg: validated experiment
        show_progress: draw a tqdm bar and print violating trials as they finish
        progress_callback: receives status lines (matrix and delta setup)

    Returns:
        (records sorted by trial, summarize(records))

    Raises:
        EnumerationCapError: exact delta with binomial(n, 2k) above the cap
    """
    shared = None
    if not cfg.fresh_matrix:
        rng = np.random.default_rng(np.random.SeedSequence([cfg.seed]))
        A = make_matrix(cfg.m, cfg.n, cfg.ensemble, rng)
        delta = obtain_delta(cfg, A, rng, workers=cfg.workers)
        shared = (A, delta)
        if progress_callback:
            progress_callback(f"delta_{2 * cfg.k} = {delta.delta:.6f} ({delta.kind})")

    records: list[TrialRecord] = []
    with warnings.catch_warnings():
        # non-convergence is recorded per trial
        warnings.simplefilter("ignore", ConvergenceWarning)
        with tqdm(total=cfg.trials, desc="Trials", unit=" trial", disable=not show_progress) as bar:
            if cfg.workers == 1:
                for i in range(cfg.trials):
                    records.append(_finished(run_trial(cfg, i, shared), bar, show_progress))
            else:
                with ThreadPoolExecutor(max_workers=cfg.workers) as executor:
                    futures = [executor.submit(run_trial, cfg, i, shared) for i in range(cfg.trials)]
                    for future in as_completed(futures):
                        records.append(_finished(future.result(), bar, show_progress))

    records.sort(key=lambda r: r.trial)
    return records, summarize(records)


def _finished(record: TrialRecord, bar: tqdm, show_progress: bool) -> TrialRecord:
    bar.update(1)
    if show_progress and record.status == STATUS_VIOLATION:
        tqdm.write(f"  ✗ trial {record.trial}: {record.note}")
    return record
