"""
Numeric checks of every inequality in the recovery proof chain.

Each check returns a CheckReport (lhs <= rhs). Vector inequalities hold for
arbitrary inputs; the matrix and theorem checks additionally need a feasible
(x, x_hat) pair and a valid delta_2k, and report `hypotheses_met=False` with
a note when those are missing instead of raising.

Usage:
    from lemmas import check_theorem_bounds

    reports = check_theorem_bounds(prob, x_ref, out.x_hat, bound_set(p, delta), p)
    any(r.violated for r in reports)
"""

import math

import numpy as np

from utils.constants import (
    CHECK_ABS_TOL,
    CHECK_REL_TOL,
    DELTA_MIN,
    FEAS_REL_TOL,
    KIND_EXACT,
    KIND_SAMPLED,
    NOISELESS_RESIDUAL,
    REGIME_GENERAL,
    REGIME_SPECIAL,
    REGIMES,
)
from utils.errors import DimensionError, DomainError, SortednessError
from bounds import C1_p, C1_tp, big_C, big_C_bar, prior_block_constant
from bounds.types import BoundSet
from ric.types import RicEstimate, as_array
from solver.norms import check_p, lp_norm, lp_norm_pth_power
from solver.types import SensingProblem
from .partition import best_k_tail_p_pow, partition_error, snap_estimate
from .types import CheckReport, PartitionedError


# =============================================================================
# Helpers
# =============================================================================

def _p_pow(v: np.ndarray, p: float) -> float:
    return float(np.sum(np.abs(v) ** p))


def _t(pe: PartitionedError, p: float) -> float:
    tail = _p_pow(pe.tail, p)
    return min(_p_pow(pe.block(1), p) / tail, 1.0) if tail > 0.0 else 0.0


def _sorted_input(u) -> np.ndarray:
    u = np.asarray(u, dtype=float).ravel()
    if np.any(u < 0.0) or np.any(np.diff(u) > 0.0):
        raise SortednessError("u must be non-negative and non-increasing")
    return u


def _delta_of(delta: float | RicEstimate) -> tuple[float, str | None]:
    if isinstance(delta, RicEstimate):
        return float(delta.delta), delta.kind
    return float(delta), None


def _delta_problem(delta: float, kind: str | None) -> str | None:
    if kind == KIND_SAMPLED:
        return "delta_2k is a sampled lower bound, not a certified RIC"
    if not 0.0 <= delta < 1.0:
        return f"delta_2k = {delta:.6g} is not in [0, 1): the RIP fails at order 2k"
    return None


def _feasibility(prob: SensingProblem, x: np.ndarray, x_hat: np.ndarray) -> tuple[str | None, float]:
    """
    Check both points against the noise budget.

    Returns (note or None, effective epsilon). The effective epsilon is the
    larger of epsilon and the two residuals, so the equality-constrained case
    carries its rounding residual into the bounds.
    """
    r_x = float(np.linalg.norm(prob.y - prob.A @ x))
    r_hat = float(np.linalg.norm(prob.y - prob.A @ x_hat))
    if prob.epsilon == 0.0:
        limit = NOISELESS_RESIDUAL * float(np.linalg.norm(prob.y))
    else:
        limit = prob.epsilon * (1.0 + FEAS_REL_TOL)
    note = None
    if r_x > limit:
        note = f"reference signal is not feasible (residual {r_x:.3g} > {limit:.3g})"
    elif r_hat > limit:
        note = f"estimate is not feasible (residual {r_hat:.3g} > {limit:.3g})"
    return note, max(prob.epsilon, r_x, r_hat)


def dominates(x_hat: np.ndarray, x: np.ndarray, p: float) -> bool:
    """||x_hat||_p^p <= ||x||_p^p up to the check tolerance."""
    return lp_norm_pth_power(x_hat, p) <= lp_norm_pth_power(x, p) * (1.0 + CHECK_REL_TOL) + CHECK_ABS_TOL


def _far_tail_image(A: np.ndarray, pe: PartitionedError) -> np.ndarray:
    """A applied to h restricted to T2 through T_l."""
    values = np.where(np.arange(pe.h.shape[0]) >= 2 * pe.k, pe.h, 0.0)
    return A @ pe.embed(values, A.shape[1])


def _join(*notes: str | None) -> str | None:
    present = [n for n in notes if n]
    return "; ".join(present) if present else None


# =============================================================================
# Vector inequalities
# =============================================================================

def check_omega(w, p: float) -> CheckReport:
    """sum w_j <= (sum w_j^p)^(1/p) for non-negative w."""
    p = check_p(p)
    w = np.asarray(w, dtype=float).ravel()
    if np.any(w < 0.0):
        raise DomainError("w must be non-negative")
    return CheckReport.compare("omega", np.sum(w), lp_norm(w, p))


def check_reverse_holder(u, p: float) -> CheckReport:
    """k^(1/2 - 1/p) ||u||_p <= ||u||_2 for u of length k."""
    p = check_p(p)
    u = np.asarray(u, dtype=float).ravel()
    if u.size == 0:
        raise DimensionError("u must be non-empty")
    k = u.shape[0]
    return CheckReport.compare("reverse_holder", k ** (0.5 - 1.0 / p) * lp_norm(u, p), np.linalg.norm(u))


def check_shift(u, l: int, r: int, p: float) -> CheckReport:
    """
    Shift inequality on a sorted vector.

    (sum_{i=l+1}^{l+r} u_i^2)^(1/2) <= C (sum_{i=1}^{r} u_i^p)^(1/p) with
    C = max(r^(1/2 - 1/p), (p/2)^(1/2) (2l / (2 - p))^(1/2 - 1/p)).

    Raises:
        SortednessError: u negative somewhere or not non-increasing
    """
    p = check_p(p)
    u = _sorted_input(u)
    if l < 1 or r < 1:
        raise DimensionError(f"l and r must be >= 1, got l={l}, r={r}")
    if u.shape[0] < l + r:
        raise DimensionError(f"u needs at least l + r = {l + r} entries, got {u.shape[0]}")

    exponent = 0.5 - 1.0 / p
    constant = max(r ** exponent, math.sqrt(p / 2.0) * (2.0 * l / (2.0 - p)) ** exponent)
    lhs = np.linalg.norm(u[l:l + r])
    rhs = constant * lp_norm(u[:r], p)
    return CheckReport.compare("shift", lhs, rhs)


def check_shift_corollary(u, k: int, p: float) -> CheckReport:
    """(sum_{i=k+1}^{3k} u_i^2)^(1/2) <= C1(p) k^(1/2 - 1/p) (sum_{i=1}^{2k} u_i^p)^(1/p)."""
    p = check_p(p)
    u = _sorted_input(u)
    if k < 1 or u.shape[0] < 3 * k:
        raise DimensionError(f"u needs at least 3k = {3 * k} entries, got {u.shape[0]}")
    lhs = np.linalg.norm(u[k:3 * k])
    rhs = C1_p(p) * k ** (0.5 - 1.0 / p) * lp_norm(u[:2 * k], p)
    return CheckReport.compare("shift_corollary", lhs, rhs)


def check_sharper_block_constant(p: float) -> CheckReport:
    """sqrt(2) C1(p) against the same expression with the earlier constant."""
    p = check_p(p)
    return CheckReport.compare(
        "sharper_block_constant",
        math.sqrt(2.0) * C1_p(p),
        math.sqrt(2.0) * prior_block_constant(p),
    )


def check_tail_energy(pe: PartitionedError, p: float) -> CheckReport:
    """sum_{i>=2} ||h_Ti||_2^2 <= (1 - t) t^(2/p - 1) k^(1 - 2/p) ||h_T0c||_p^2."""
    p = check_p(p)
    t = _t(pe, p)
    tail = _p_pow(pe.tail, p)
    lhs = float(np.sum(pe.far_tail ** 2))
    t_term = (1.0 - t) * t ** (2.0 / p - 1.0) if t > 0.0 else 0.0
    rhs = t_term * pe.k ** (1.0 - 2.0 / p) * tail ** (2.0 / p)
    return CheckReport.compare("tail_energy", lhs, rhs)


def check_reverse_block_sum(pe: PartitionedError, p: float) -> CheckReport:
    """sum_{i>=2} ||h_Ti||_2 <= sqrt(2) C1(p) k^(1/2 - 1/p) ||h_T0c||_p."""
    p = check_p(p)
    lhs = sum(float(np.linalg.norm(pe.block(i))) for i in range(2, pe.l + 1))
    tail = _p_pow(pe.tail, p)
    rhs = math.sqrt(2.0) * C1_p(p) * pe.k ** (0.5 - 1.0 / p) * (tail ** (1.0 / p) if tail > 0.0 else 0.0)
    return CheckReport.compare("reverse_block_sum", lhs, rhs)


def check_cone(x, x_hat, k: int, p: float) -> CheckReport:
    """
    ||h_T0c||_p^p <= ||h_T0||_p^p + 2 ||x_T0c||_p^p.

    Needs ||x_hat||_p <= ||x||_p; without it the report carries
    hypotheses_met=False.
    """
    p = check_p(p)
    x = np.asarray(x, dtype=float).ravel()
    x_hat = snap_estimate(x, x_hat)
    pe = partition_error(x, x_hat, k, p)
    lhs = _p_pow(pe.tail, p)
    rhs = _p_pow(pe.head, p) + 2.0 * best_k_tail_p_pow(x, k, p)
    if dominates(x_hat, x, p):
        return CheckReport.compare("cone", lhs, rhs)
    return CheckReport.compare("cone", lhs, rhs, hypotheses_met=False,
                               note="||x_hat||_p exceeds ||x||_p")


# =============================================================================
# Matrix inequalities
# =============================================================================

def check_A_blocksum(A, pe: PartitionedError, delta: RicEstimate, p: float) -> CheckReport:
    """
    ||sum_{i>=2} A h_Ti||_2^2 <= C1(t, p) k^(1 - 2/p) ||h_T0c||_p^2.

    Args:
        A: sensing matrix the partition's h lives in
        pe: partition of h
        delta: exact delta_2k of A

    Raises:
        DomainError: delta is not an exact RIC
        DimensionError: delta is not of order 2k
    """
    p = check_p(p)
    A = as_array(A)
    if not isinstance(delta, RicEstimate) or delta.kind != KIND_EXACT:
        raise DomainError("check_A_blocksum needs an exact delta_2k (RicEstimate of kind 'exact')")
    if delta.order != 2 * pe.k:
        raise DimensionError(f"delta has order {delta.order}, expected 2k = {2 * pe.k}")

    lhs = float(np.sum(_far_tail_image(A, pe) ** 2))
    if not delta.usable:
        return CheckReport.compare("A_blocksum", lhs, math.nan, hypotheses_met=False,
                                   note=_delta_problem(delta.delta, delta.kind) or "RIP fails at order 2k")

    t = _t(pe, p)
    tail = _p_pow(pe.tail, p)
    rhs = C1_tp(t, p, delta.delta) * pe.k ** (1.0 - 2.0 / p) * tail ** (2.0 / p)
    return CheckReport.compare("A_blocksum", lhs, rhs)


def check_head_energy(prob: SensingProblem, x, x_hat, delta: float | RicEstimate, p: float) -> CheckReport:
    """
    ||h_T0||_2^2 + ||h_T1||_2^2 <= (2 eps + ||sum_{i>=2} A h_Ti||_2)^2 / (1 - delta_2k).

    Needs both x and x_hat feasible and delta_2k a valid RIC of A.
    """
    p = check_p(p)
    x = np.asarray(x, dtype=float).ravel()
    x_hat = snap_estimate(x, x_hat)
    delta_value, kind = _delta_of(delta)
    feasibility_note, eps = _feasibility(prob, x, x_hat)
    note = _join(feasibility_note, _delta_problem(delta_value, kind))

    pe = partition_error(x, x_hat, prob.k, p)
    lhs = float(np.sum(pe.head ** 2) + np.sum(pe.block(1) ** 2))
    if delta_value >= 1.0:
        return CheckReport.compare("head_energy", lhs, math.nan, hypotheses_met=False, note=note)

    spill = float(np.linalg.norm(_far_tail_image(prob.A, pe)))
    rhs = (2.0 * eps + spill) ** 2 / (1.0 - delta_value)
    return CheckReport.compare("head_energy", lhs, rhs, hypotheses_met=note is None, note=note)


def check_head_p_bound(prob: SensingProblem, x, x_hat, delta: float | RicEstimate, p: float,
                       regime: str = REGIME_GENERAL) -> CheckReport:
    """
    Head bound in the p-th power.

    general:          ||h_T0||_p^p <= 2^(3p/2) / (1 - delta)^(p/2) k^(1 - p/2) eps^p + C(p) ||h_T0c||_p^p
    special_n_le_4k:  ||h_T0||_p^p <= 2^(p+1)  / (1 - delta)^(p/2) k^(1 - p/2) eps^p + C_bar(p) ||h_T0c||_p^p

    delta_2k below sqrt(2)/2 is raised to sqrt(2)/2 (the RIP still holds).
    The special form needs n <= 4k and pads h to exactly 4k entries.
    """
    if regime not in REGIMES:
        raise DomainError(f"regime must be one of {REGIMES}, got {regime!r}")
    p = check_p(p)
    x = np.asarray(x, dtype=float).ravel()
    x_hat = snap_estimate(x, x_hat)
    k = prob.k
    special = regime == REGIME_SPECIAL
    name = "head_p_bound_bar" if special else "head_p_bound"

    delta_value, kind = _delta_of(delta)
    feasibility_note, eps = _feasibility(prob, x, x_hat)
    regime_note = None
    if special and prob.n > 4 * k:
        regime_note = f"n = {prob.n} exceeds 4k = {4 * k}"
    p_note = "p = 1 lies outside (0, 1)" if p >= 1.0 else None
    note = _join(feasibility_note, _delta_problem(delta_value, kind), regime_note, p_note)

    pe = partition_error(x, x_hat, k, p, min_length=4 * k if special else 0)
    lhs = _p_pow(pe.head, p)
    if delta_value >= 1.0:
        return CheckReport.compare(name, lhs, math.nan, hypotheses_met=False, note=note)

    delta_used = max(delta_value, DELTA_MIN)
    tail = _p_pow(pe.tail, p)
    if special:
        noise = 2.0 ** (p + 1.0) / (1.0 - delta_used) ** (p / 2.0)
        contraction = big_C_bar(p, delta_used)
    else:
        noise = 2.0 ** (1.5 * p) / (1.0 - delta_used) ** (p / 2.0)
        contraction = big_C(p, delta_used)
    rhs = noise * k ** (1.0 - p / 2.0) * eps ** p + contraction * tail
    return CheckReport.compare(name, lhs, rhs, hypotheses_met=note is None, note=note)


# =============================================================================
# Error bounds
# =============================================================================

def check_theorem_bounds(prob: SensingProblem, x, x_hat, bounds: BoundSet, p: float,
                         delta_kind: str | None = None) -> list[CheckReport]:
    """
    Compare the recovery error against the error bounds.

    Reports, in order:
        theorem_pnorm:      ||x - x_hat||_p^p <= C0 ||x_T0c||_p^p + C1 k^(1 - p/2) eps^p
        theorem_2norm:      ||x - x_hat||_2^p <= D0 k^(p/2 - 1) ||x_T0c||_p^p + D1 eps^p
        theorem_pnorm_bar,
        theorem_2norm_bar:  barred analogues, only when bounds.regime is special_n_le_4k

    Hypotheses: both points feasible, ||x_hat||_p <= ||x||_p, the family's
    constants valid, delta not a sampled lower bound; barred reports also need
    n <= 4k. T0 is the index set of the k largest |x_i|.

    Args:
        prob: the problem x_hat was recovered from
        x: reference signal
        x_hat: estimate
        bounds: constants for (p, delta_2k)
        p: exponent, must equal bounds.p
        delta_kind: RicEstimate.kind the bounds' delta came from
    """
    p = check_p(p)
    if not math.isclose(p, bounds.p, rel_tol=0.0, abs_tol=1e-12):
        raise DomainError(f"p = {p} does not match the bound set's p = {bounds.p}")

    x = np.asarray(x, dtype=float).ravel()
    x_hat = snap_estimate(x, x_hat)
    k = prob.k

    feasibility_note, eps = _feasibility(prob, x, x_hat)
    dominance_note = None if dominates(x_hat, x, p) else "||x_hat||_p exceeds ||x||_p"
    kind_note = _delta_problem(bounds.delta, delta_kind)
    common = _join(feasibility_note, dominance_note, kind_note)

    h = x - x_hat
    error_p = _p_pow(h, p)
    error_2 = float(np.linalg.norm(h)) ** p
    best_k = best_k_tail_p_pow(x, k, p)
    eps_p = eps ** p

    general_note = _join(common, bounds.reason_general)
    reports = [
        CheckReport.compare(
            "theorem_pnorm", error_p,
            bounds.c0 * best_k + bounds.c1 * k ** (1.0 - p / 2.0) * eps_p,
            hypotheses_met=general_note is None, note=general_note,
        ),
        CheckReport.compare(
            "theorem_2norm", error_2,
            bounds.d0 * k ** (p / 2.0 - 1.0) * best_k + bounds.d1 * eps_p,
            hypotheses_met=general_note is None, note=general_note,
        ),
    ]

    if bounds.regime == REGIME_SPECIAL:
        size_note = f"n = {prob.n} exceeds 4k = {4 * k}" if prob.n > 4 * k else None
        special_note = _join(common, bounds.reason_special, size_note)
        reports += [
            CheckReport.compare(
                "theorem_pnorm_bar", error_p,
                bounds.c0_bar * best_k + bounds.c1_bar * k ** (1.0 - p / 2.0) * eps_p,
                hypotheses_met=special_note is None, note=special_note,
            ),
            CheckReport.compare(
                "theorem_2norm_bar", error_2,
                bounds.d0_bar * k ** (p / 2.0 - 1.0) * best_k + bounds.d1_bar * eps_p,
                hypotheses_met=special_note is None, note=special_note,
            ),
        ]
    return reports
