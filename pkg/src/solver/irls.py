"""
lp minimization by iteratively reweighted least squares.

    minimize ||x||_p  subject to  ||y - A x||_2 <= epsilon

Noiseless (epsilon = 0):
    x <- Q A^T (A Q A^T)^-1 y,  Q = diag((x_i^2 + sigma^2)^(1 - p/2))
Noisy (epsilon > 0):
    minimize sum (x_i^2 + sigma^2)^(p/2) + lam ||A x - y||^2, i.e.
    x <- Q A^T (A Q A^T + mu I)^-1 y with mu = p / (2 lam); lam is bisected
    until the residual lands in [0.9 epsilon, epsilon].

Both paths run a smoothing continuation: sigma starts at max|x_LS| and is
divided by 10 per level down to 1e-9 * sigma_0. Each weighted step is a
least-squares solve on A diag(sqrt(q)), never an explicit A Q A^T.

Usage:
    from solver import irls_recover, make_instance

    prob, x_ref = make_instance(6, 10, 2, seed=1)
    out = irls_recover(prob, 0.5, x_ref=x_ref)
    out.certified
"""

import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import lstsq

from utils.constants import (
    CHECK_ABS_TOL,
    CHECK_REL_TOL,
    FEAS_REL_TOL,
    LEVEL_STEP_RATIO,
    NOISELESS_RESIDUAL,
    OBJECTIVE_INCREASE_TOL,
    RESIDUAL_TARGET_LOW,
    SUPPORT_REL_THRESHOLD,
)
from utils.errors import ConvergenceWarning, DimensionError, RankDeficiencyError
from .norms import check_p, lp_norm_pth_power
from .types import IrlsOptions, RecoveryOutcome, SensingProblem


@dataclass
class _Run:
    """One continuation run."""
    x: np.ndarray
    sigma: float
    iterations: int
    increases: int
    converged: bool


def _smoothed(x: np.ndarray, sigma: float, p: float) -> float:
    return float(np.sum((x * x + sigma * sigma) ** (p / 2.0)))


def _min_norm(A: np.ndarray, y: np.ndarray) -> np.ndarray:
    return lstsq(A, y)[0]


def _continuation(
    step: Callable[[np.ndarray, float], np.ndarray],
    objective: Callable[[np.ndarray, float], float],
    x0: np.ndarray,
    sigma0: float,
    opts: IrlsOptions,
) -> _Run:
    """Run `step` to a fixed point at each smoothing level, shrinking sigma between levels."""
    floor = sigma0 * opts.smoothing_floor_ratio
    x, sigma = x0, sigma0
    iterations = increases = 0

    while True:
        final = sigma <= floor
        previous = objective(x, sigma)
        settled = False
        for _ in range(opts.max_iter_per_level):
            x_new = step(x, sigma)
            iterations += 1
            current = objective(x_new, sigma)
            if current > previous * (1.0 + OBJECTIVE_INCREASE_TOL):
                increases += 1
            moved = np.linalg.norm(x_new - x)
            x, previous = x_new, current
            if final:
                settled = bool(moved / max(1.0, np.linalg.norm(x)) < opts.final_step_tol)
            else:
                settled = bool(moved < sigma / LEVEL_STEP_RATIO)
            if settled:
                break
        if final:
            return _Run(x, sigma, iterations, increases, settled)
        sigma = max(sigma / opts.smoothing_decay, floor)


def _noiseless_step(A: np.ndarray, y: np.ndarray, p: float):
    def step(x: np.ndarray, sigma: float) -> np.ndarray:
        s = (x * x + sigma * sigma) ** (0.5 - p / 4.0)
        return s * _min_norm(A * s, y)
    return step


def _penalized_step(A: np.ndarray, y: np.ndarray, p: float, mu: float):
    n = A.shape[1]
    rhs = np.concatenate([y, np.zeros(n)])
    ridge = np.sqrt(mu) * np.eye(n)

    def step(x: np.ndarray, sigma: float) -> np.ndarray:
        s = (x * x + sigma * sigma) ** (0.5 - p / 4.0)
        return s * lstsq(np.vstack([A * s, ridge]), rhs)[0]
    return step


def _support_polish(A: np.ndarray, y: np.ndarray, x: np.ndarray, p: float) -> np.ndarray:
    """Least squares on the detected support; kept only if exact and no worse in lp."""
    scale = np.max(np.abs(x))
    if scale == 0.0:
        return x
    support = np.flatnonzero(np.abs(x) > SUPPORT_REL_THRESHOLD * scale)
    if support.size > A.shape[0]:
        return x
    candidate = np.zeros_like(x)
    candidate[support] = _min_norm(A[:, support], y)
    if np.linalg.norm(y - A @ candidate) > NOISELESS_RESIDUAL * np.linalg.norm(y):
        return x
    if lp_norm_pth_power(candidate, p) > lp_norm_pth_power(x, p) * (1.0 + CHECK_REL_TOL):
        return x
    return candidate


def _outcome(prob: SensingProblem, x: np.ndarray, p: float, x_ref, run: _Run,
             lambda_used: float | None = None) -> RecoveryOutcome:
    residual = float(np.linalg.norm(prob.y - prob.A @ x))
    if prob.epsilon == 0.0:
        feasible = residual <= NOISELESS_RESIDUAL * np.linalg.norm(prob.y)
    else:
        feasible = residual <= prob.epsilon * (1.0 + FEAS_REL_TOL)
    objective = lp_norm_pth_power(x, p)

    dominates = None
    if x_ref is not None:
        reference = lp_norm_pth_power(x_ref, p)
        dominates = bool(objective <= reference * (1.0 + CHECK_REL_TOL) + CHECK_ABS_TOL)

    if not run.converged:
        warnings.warn(
            f"IRLS hit {run.iterations} iterations without settling at sigma={run.sigma:.3g}; "
            f"returning the last iterate",
            ConvergenceWarning,
            stacklevel=4,
        )

    return RecoveryOutcome(
        x_hat=x,
        residual=float(residual),
        objective_p=float(objective),
        feasible=bool(feasible),
        objective_dominates_reference=dominates,
        iterations=int(run.iterations),
        final_smoothing=float(run.sigma),
        converged=bool(run.converged),
        objective_increases=run.increases,
        lambda_used=lambda_used,
    )


def _recover_noiseless(prob: SensingProblem, p: float, opts: IrlsOptions, x_ref) -> RecoveryOutcome:
    A, y = prob.A, prob.y
    if np.linalg.matrix_rank(A) < prob.m:
        raise RankDeficiencyError(f"noiseless recovery needs rank(A) = m = {prob.m}")
    if not np.any(y):
        return _outcome(prob, np.zeros(prob.n), p, x_ref, _Run(np.zeros(prob.n), 0.0, 0, 0, True))

    x0 = _min_norm(A, y)
    sigma0 = float(np.max(np.abs(x0)))
    run = _continuation(
        _noiseless_step(A, y, p),
        lambda x, sigma: _smoothed(x, sigma, p),
        x0, sigma0, opts,
    )
    x = _support_polish(A, y, run.x, p) if opts.polish else run.x
    return _outcome(prob, x, p, x_ref, run)


def _project(A: np.ndarray, y: np.ndarray, x: np.ndarray, epsilon: float) -> np.ndarray:
    """Move x along A^+ r until ||y - A x|| = epsilon (A of full row rank)."""
    r = y - A @ x
    norm_r = np.linalg.norm(r)
    if norm_r <= epsilon:
        return x
    return x + (1.0 - epsilon / norm_r) * _min_norm(A, r)


def _drop_tiny(A: np.ndarray, y: np.ndarray, x: np.ndarray, p: float, epsilon: float) -> np.ndarray:
    scale = np.max(np.abs(x))
    if scale == 0.0:
        return x
    trimmed = np.where(np.abs(x) > SUPPORT_REL_THRESHOLD * scale, x, 0.0)
    if np.linalg.norm(y - A @ trimmed) > epsilon:
        return x
    return trimmed if lp_norm_pth_power(trimmed, p) <= lp_norm_pth_power(x, p) else x


def _recover_noisy(prob: SensingProblem, p: float, opts: IrlsOptions, x_ref) -> RecoveryOutcome:
    A, y, eps = prob.A, prob.y, prob.epsilon
    if np.linalg.norm(y) <= eps:
        return _outcome(prob, np.zeros(prob.n), p, x_ref, _Run(np.zeros(prob.n), 0.0, 0, 0, True))

    x0 = _min_norm(A, y)
    sigma0 = float(np.max(np.abs(x0)))
    lam_scale = sigma0 ** (p - 2.0)
    total_iterations = 0

    def solve(lam: float) -> tuple[_Run, float]:
        nonlocal total_iterations
        lam_eff = lam * lam_scale
        run = _continuation(
            _penalized_step(A, y, p, p / (2.0 * lam_eff)),
            lambda x, sigma: _smoothed(x, sigma, p) + lam_eff * float(np.sum((A @ x - y) ** 2)),
            x0, sigma0, opts,
        )
        total_iterations += run.iterations
        return run, float(np.linalg.norm(y - A @ run.x))

    lo, hi = np.log10(opts.lambda_bracket[0]), np.log10(opts.lambda_bracket[1])
    chosen: tuple[_Run, float] | None = None
    best_feasible: tuple[_Run, float] | None = None
    last: tuple[_Run, float] | None = None

    for _ in range(opts.lambda_max_steps):
        mid = 0.5 * (lo + hi)
        run, residual = solve(10.0 ** mid)
        last = (run, 10.0 ** mid)
        if residual > eps:
            lo = mid
            continue
        if best_feasible is None or lp_norm_pth_power(run.x, p) < lp_norm_pth_power(best_feasible[0].x, p):
            best_feasible = (run, 10.0 ** mid)
        if residual >= RESIDUAL_TARGET_LOW * eps:
            chosen = (run, 10.0 ** mid)
            break
        hi = mid

    run, lam = chosen or best_feasible or last
    x = run.x
    if opts.polish:
        x = _drop_tiny(A, y, x, p, eps)
    x = _project(A, y, x, eps)

    run = _Run(x, run.sigma, total_iterations, run.increases, run.converged)
    return _outcome(prob, x, p, x_ref, run, lambda_used=lam)


def irls_recover(
    prob: SensingProblem,
    p: float,
    opts: IrlsOptions | None = None,
    x_ref: np.ndarray | None = None,
) -> RecoveryOutcome:
    """
    Approximate the lp minimizer of `prob` and report its certificate.

    Args:
        prob: sensing problem with m <= n
        p: exponent in (0, 1]
        opts: schedule overrides
        x_ref: reference signal; fills objective_dominates_reference

    Returns:
        RecoveryOutcome. Non-convergence is reported (converged=False plus a
        ConvergenceWarning), never raised.

    Raises:
        RankDeficiencyError: epsilon = 0 and rank(A) < m
    """
    p = check_p(p)
    opts = opts or IrlsOptions()
    if prob.m > prob.n:
        raise DimensionError(f"need m <= n, got m={prob.m}, n={prob.n}")
    if x_ref is not None:
        x_ref = np.asarray(x_ref, dtype=float).ravel()
        if x_ref.shape[0] != prob.n:
            raise DimensionError(f"x_ref has length {x_ref.shape[0]}, expected {prob.n}")

    if prob.epsilon == 0.0:
        return _recover_noiseless(prob, p, opts, x_ref)
    return _recover_noisy(prob, p, opts, x_ref)
