"""
Randomized sweep over every check.

Vector inequalities run on arbitrary random vectors. Matrix inequalities
run on feasible pairs (x, x_hat) built around small Gaussian matrices whose
delta_2k is computed exactly.

Usage:
    from lemmas import run_lemma_suite

    results = run_lemma_suite(trials=1000, seed=0)
    results["shift"]["violations"]
"""

import math
from typing import Callable

import numpy as np
from scipy.linalg import lstsq, null_space

from utils.constants import REGIME_SPECIAL
from ric.ric import exact_ric
from solver.instances import make_matrix, make_noise, make_signal
from solver.types import SensingProblem
from .checks import (
    check_A_blocksum,
    check_cone,
    check_head_energy,
    check_head_p_bound,
    check_omega,
    check_reverse_block_sum,
    check_reverse_holder,
    check_shift,
    check_shift_corollary,
    check_sharper_block_constant,
    check_tail_energy,
)
from .partition import partition_error, snap_estimate
from .types import CheckReport

DEFAULT_P_GRID = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)

# (m, n, k); k=1 keeps delta_2 below 1, and the second size has n = 4k for the special head bound
DEFAULT_SIZES = ((8, 12, 1), (3, 4, 1))

VECTOR_CHECKS = (
    "omega", "reverse_holder", "shift", "shift_corollary", "sharper_block_constant",
    "tail_energy", "reverse_block_sum", "cone",
)
MATRIX_CHECKS = ("head_energy", "A_blocksum", "head_p_bound", "head_p_bound_bar")

# seed-sequence tags separating the matrix draws from the per-trial streams
_MATRIX_STREAM = 1
_PAIR_STREAM = 2


class _Tally:
    """Per-check counters."""

    def __init__(self, names):
        self.stats = {
            name: {"trials": 0, "passes": 0, "hypotheses_unmet": 0, "violations": 0, "min_slack": math.inf}
            for name in names
        }

    def add(self, report: CheckReport) -> None:
        entry = self.stats[report.name]
        entry["trials"] += 1
        if not report.hypotheses_met:
            entry["hypotheses_unmet"] += 1
            return
        if report.satisfied:
            entry["passes"] += 1
        else:
            entry["violations"] += 1
        entry["min_slack"] = min(entry["min_slack"], report.slack)

    def result(self) -> dict:
        out = {}
        for name, entry in self.stats.items():
            if entry["trials"] == 0:
                continue
            row = dict(entry)
            if math.isinf(row["min_slack"]):
                row["min_slack"] = None
            out[name] = row
        return out


def _random_magnitudes(rng: np.random.Generator, n: int) -> np.ndarray:
    """Heavy-tailed non-negative values with a random fraction of exact zeros."""
    values = np.abs(rng.standard_normal(n)) * rng.exponential(size=n) ** 2
    values[rng.random(n) < rng.uniform(0.0, 0.6)] = 0.0
    return values


def _signed(rng: np.random.Generator, values: np.ndarray) -> np.ndarray:
    return values * rng.choice([-1.0, 1.0], size=values.shape[0])


def _vector_trial(rng: np.random.Generator, p_grid, tally: _Tally) -> None:
    p = float(rng.choice(p_grid))
    k = int(rng.integers(1, 6))
    n = k * int(rng.integers(2, 7)) + int(rng.integers(0, k))

    tally.add(check_omega(_random_magnitudes(rng, n), p))
    tally.add(check_reverse_holder(_signed(rng, _random_magnitudes(rng, k)), p))

    l, r = int(rng.integers(1, 2 * k + 1)), int(rng.integers(1, 2 * k + 1))
    tally.add(check_shift(np.sort(_random_magnitudes(rng, l + r))[::-1], l, r, p))
    tally.add(check_shift_corollary(np.sort(_random_magnitudes(rng, 3 * k))[::-1], k, p))
    tally.add(check_sharper_block_constant(float(rng.uniform(0.01, 1.0))))

    x = _signed(rng, _random_magnitudes(rng, n))
    h = _signed(rng, _random_magnitudes(rng, n))
    pe = partition_error(x, x - h, k, p)
    tally.add(check_tail_energy(pe, p))
    tally.add(check_reverse_block_sum(pe, p))

    # cone: scale a random direction so that ||x_hat||_p^p = s ||x||_p^p, s in (0, 1]
    x_mass = np.sum(np.abs(x) ** p)
    direction = _signed(rng, _random_magnitudes(rng, n))
    d_mass = np.sum(np.abs(direction) ** p)
    if x_mass > 0.0 and d_mass > 0.0:
        s = float(rng.uniform(1e-3, 1.0))
        x_hat = direction * (s * x_mass / d_mass) ** (1.0 / p)
    else:
        x_hat = np.zeros(n)
    tally.add(check_cone(x, x_hat, k, p))


def _feasible_pair(rng: np.random.Generator, A: np.ndarray, null: np.ndarray, k: int):
    """
    Reference x, noisy observation and a second point x_hat, both within epsilon.

    x_hat = x - h with A h = e2 - e, so y - A x_hat = e2.
    """
    m, n = A.shape
    epsilon = 0.0 if rng.random() < 0.3 else float(rng.uniform(1e-3, 0.5))
    x = make_signal(n, k, "compressible" if rng.random() < 0.3 else "sparse", rng)
    e = make_noise(m, epsilon * float(rng.uniform(0.0, 1.0)), rng)
    e2 = make_noise(m, epsilon * float(rng.uniform(0.0, 1.0)), rng)

    h = lstsq(A, e2 - e)[0]
    if null.shape[1]:
        h = h + null @ (rng.standard_normal(null.shape[1]) * float(rng.exponential()))
    prob = SensingProblem(A=A, y=A @ x + e, epsilon=epsilon, k=k)
    return prob, x, x - h


def _matrix_trials(sizes, trials: int, seed: int, p_grid, tally: _Tally,
                   progress_callback: Callable[[str], None] | None) -> None:
    for index, (m, n, k) in enumerate(sizes):
        rng = np.random.default_rng(np.random.SeedSequence([seed, _MATRIX_STREAM, index]))
        A = make_matrix(m, n, "gaussian", rng)
        delta = exact_ric(A, 2 * k)
        null = null_space(A)
        special = n <= 4 * k
        if progress_callback:
            progress_callback(f"[{index + 1}/{len(sizes)}] m={m} n={n} k={k}: delta_{2 * k} = {delta.delta:.4f}")

        for i in range(trials):
            trial_rng = np.random.default_rng(np.random.SeedSequence([seed, _PAIR_STREAM, index, i]))
            p = float(trial_rng.choice(p_grid))
            prob, x, x_hat = _feasible_pair(trial_rng, A, null, k)

            tally.add(check_head_energy(prob, x, x_hat, delta, p))
            tally.add(check_A_blocksum(A, partition_error(x, snap_estimate(x, x_hat), k, p), delta, p))
            tally.add(check_head_p_bound(prob, x, x_hat, delta, p))
            if special:
                tally.add(check_head_p_bound(prob, x, x_hat, delta, p, regime=REGIME_SPECIAL))


def run_lemma_suite(
    trials: int = 1000,
    seed: int = 0,
    p_grid=DEFAULT_P_GRID,
    sizes=DEFAULT_SIZES,
    matrix_trials: int | None = None,
    progress_callback: Callable[[str], None] | None = None,
) -> dict:
    """
    Run every check on seeded random inputs.

    Args:
        trials: vector-inequality trials
        seed: master seed
        p_grid: exponents drawn from
        sizes: (m, n, k) triples for the matrix inequalities; empty skips them
        matrix_trials: trials per size (default: trials)
        progress_callback: receives short status lines

    Returns:
        {check: {trials, passes, hypotheses_unmet, violations, min_slack}}
    """
    tally = _Tally(VECTOR_CHECKS + MATRIX_CHECKS)

    for i in range(trials):
        _vector_trial(np.random.default_rng(np.random.SeedSequence([seed, i])), p_grid, tally)
    if progress_callback:
        progress_callback(f"vector checks: {trials} trials")

    if sizes:
        _matrix_trials(sizes, trials if matrix_trials is None else matrix_trials, seed, p_grid,
                       tally, progress_callback)

    return tally.result()
