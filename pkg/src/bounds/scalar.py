"""
Closed-form scalar functions behind the recovery guarantees.

Every function accepts a float or a numpy array and returns the same kind
(float in, float out). Domains are checked eagerly and reported as
DomainError. The branch point p* is included in the left branch everywhere
("p in (0, p*]").
"""

from functools import cache

import numpy as np
from scipy.optimize import brentq

from utils.constants import (
    H_SLOPE_LEFT,
    H_SLOPE_RIGHT,
    PBAR_FIRST_BREAK,
    PBAR_FIRST_SLOPE,
    PBAR_SECOND_BREAK,
    PSTAR_BRACKET,
    PSTAR_XTOL,
    SPECIAL_PBAR_FACTOR,
    SQRT2_OVER_2,
    VARPHI_SHIFT,
)
from utils.errors import DomainError


# =============================================================================
# Helpers
# =============================================================================

def _check(name: str, value, lo: float, hi: float,
           lo_closed: bool = False, hi_closed: bool = False) -> np.ndarray:
    """Validate value against an interval and return it as a float array."""
    arr = np.asarray(value, dtype=float)
    above = arr >= lo if lo_closed else arr > lo
    below = arr <= hi if hi_closed else arr < hi
    ok = np.isfinite(arr) & above & below
    if not np.all(ok):
        bad = arr[~ok] if arr.ndim else arr
        interval = f"{'[' if lo_closed else '('}{lo:g}, {hi:g}{']' if hi_closed else ')'}"
        raise DomainError(f"{name} must lie in {interval}, got {np.ravel(bad)[0]!r}")
    return arr


def _out(value):
    """Unwrap 0-d arrays to float."""
    return float(value) if np.ndim(value) == 0 else value


def _tpow(t: np.ndarray, exponent) -> np.ndarray:
    """t ** exponent with 0 ** (positive) = 0."""
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.power(t, exponent)
    return np.where(t == 0.0, 0.0, out)


def _left_branch(p: np.ndarray) -> np.ndarray:
    return p <= p_star()


# =============================================================================
# f, g and p*
# =============================================================================

def f(p):
    """f(p) = (p/2)^(1/2) (2-p)^(1/p - 1/2) on (0, 1]; strictly decreasing."""
    p = _check("p", p, 0.0, 1.0, hi_closed=True)
    return _out(np.exp(_log_f(p)))


def _log_f(p):
    return 0.5 * np.log(p / 2.0) + (1.0 / p - 0.5) * np.log(2.0 - p)


def g(p):
    """g(p) = (p/2)(1 - p/2)^(2/p - 1) on (0, 1]; strictly increasing, g(1) = 1/4."""
    p = _check("p", p, 0.0, 1.0, hi_closed=True)
    return _out(_g(p))


def _g(p: np.ndarray) -> np.ndarray:
    return (p / 2.0) * np.power(1.0 - p / 2.0, 2.0 / p - 1.0)


@cache
def p_star() -> float:
    """
    Unique root of f(p) = 1 on (0, 1] (about 0.45418).

    Solved once on log f, which stays finite where f itself overflows near 0.
    """
    lo, hi = PSTAR_BRACKET
    return float(brentq(_log_f, lo, hi, xtol=PSTAR_XTOL))


# =============================================================================
# Thresholds
# =============================================================================

def h(p):
    """Piecewise-linear admissibility line: 1 - 0.5p on (0, p*], 1 - 0.62p on (p*, 1)."""
    p = _check("p", p, 0.0, 1.0)
    return _out(np.where(_left_branch(p), 1.0 - H_SLOPE_LEFT * p, 1.0 - H_SLOPE_RIGHT * p))


def p_bar(delta):
    """
    Largest p the general-case corollaries admit for a given delta_2k.

    Args:
        delta: delta_2k in [sqrt(2)/2, 1). Below sqrt(2)/2, p = 1 already works.

    Returns:
        (50/31)(1 - delta) on [sqrt(2)/2, 0.7183), p* on [0.7183, 0.7729),
        2(1 - delta) on [0.7729, 1)
    """
    delta = _check("delta", delta, SQRT2_OVER_2, 1.0, lo_closed=True)
    out = np.where(
        delta < PBAR_FIRST_BREAK,
        PBAR_FIRST_SLOPE * (1.0 - delta),
        np.where(delta < PBAR_SECOND_BREAK, p_star(), 2.0 * (1.0 - delta)),
    )
    return _out(out)


def p_bar_special(delta):
    """Largest p the n <= 4k corollaries admit: ((3 + 2 sqrt 2)/2)(1 - delta)."""
    delta = _check("delta", delta, SQRT2_OVER_2, 1.0, lo_closed=True)
    return _out(SPECIAL_PBAR_FACTOR * (1.0 - delta))


# =============================================================================
# C(p), D(p) and barred variants
# =============================================================================

def _tail_constant(p: np.ndarray, delta: np.ndarray) -> np.ndarray:
    """2 g(p) delta on (0, p*], 2^(2 - 2/p) delta on (p*, 1]."""
    return np.where(_left_branch(p), 2.0 * _g(p) * delta, np.power(2.0, 2.0 - 2.0 / p) * delta)


def big_C(p, delta):
    """C(p) for the general case; the general bounds need C(p) < 1."""
    p = _check("p", p, 0.0, 1.0, hi_closed=True)
    delta = _check("delta", delta, 0.0, 1.0, lo_closed=True)
    gp = _g(p)
    shrink = np.power(2.0 - delta, 1.0 - 2.0 / p)
    left = (shrink + 2.0 * delta) * gp
    right = shrink * gp + np.power(2.0, 2.0 - 2.0 / p) * delta
    inner = np.where(_left_branch(p), left, right) / (1.0 - delta)
    return _out(np.power(inner, p / 2.0))


def big_D(p, delta):
    """D(p) for the general-case l2 error bound."""
    p = _check("p", p, 0.0, 1.0, hi_closed=True)
    delta = _check("delta", delta, 0.0, 1.0, lo_closed=True)
    gp = _g(p)
    left = (2.0 + delta) * gp
    right = (2.0 - delta) * gp + np.power(2.0, 2.0 - 2.0 / p) * delta
    inner = np.where(_left_branch(p), left, right) / (1.0 - delta)
    return _out(np.power(inner, p / 2.0))


def big_C_bar(p, delta):
    """C-bar(p) = (1 + delta) 2^(p/2 - 1) (g(p) / (1 - delta))^(p/2), n <= 4k case."""
    p = _check("p", p, 0.0, 1.0, hi_closed=True)
    delta = _check("delta", delta, 0.0, 1.0, lo_closed=True)
    value = (1.0 + delta) * np.power(2.0, p / 2.0 - 1.0) * np.power(_g(p) / (1.0 - delta), p / 2.0)
    return _out(value)


def big_D_bar(p, delta):
    """D-bar(p) = (2 g(p) / (1 - delta))^(p/2)."""
    p = _check("p", p, 0.0, 1.0, hi_closed=True)
    delta = _check("delta", delta, 0.0, 1.0, lo_closed=True)
    return _out(np.power(2.0 * _g(p) / (1.0 - delta), p / 2.0))


# =============================================================================
# C1(t, p), C2(t, p), C3(t, p) and their maxima
# =============================================================================

def _check_tpd(t, p, delta):
    t = _check("t", t, 0.0, 1.0, lo_closed=True, hi_closed=True)
    p = _check("p", p, 0.0, 1.0, hi_closed=True)
    delta = _check("delta", delta, 0.0, 1.0, lo_closed=True)
    return t, p, delta


def C1_tp(t, p, delta):
    """(1 - t) t^(2/p - 1) + tail constant; bounds ||sum_{i>=2} A h_Ti||^2."""
    t, p, delta = _check_tpd(t, p, delta)
    return _out((1.0 - t) * _tpow(t, 2.0 / p - 1.0) + _tail_constant(p, delta))


def C2_tp(t, p, delta):
    """(delta - 2) t^(2/p) + t^(2/p - 1) + tail constant."""
    t, p, delta = _check_tpd(t, p, delta)
    value = (delta - 2.0) * _tpow(t, 2.0 / p) + _tpow(t, 2.0 / p - 1.0) + _tail_constant(p, delta)
    return _out(value)


def C3_tp(t, p, delta):
    """(2 - delta)(1 - t) t^(2/p - 1) + tail constant; feeds the l2 error bound."""
    t, p, delta = _check_tpd(t, p, delta)
    value = (2.0 - delta) * (1.0 - t) * _tpow(t, 2.0 / p - 1.0) + _tail_constant(p, delta)
    return _out(value)


def t1_star(p):
    """Maximizer of C1(., p) over [0, 1]: 1 - p/2."""
    p = _check("p", p, 0.0, 1.0, hi_closed=True)
    return _out(1.0 - p / 2.0)


def t2_star(p, delta):
    """Maximizer of C2(., p) over [0, 1]: (2 - p) / (2 (2 - delta))."""
    p = _check("p", p, 0.0, 1.0, hi_closed=True)
    delta = _check("delta", delta, 0.0, 1.0, lo_closed=True)
    return _out((2.0 - p) / (2.0 * (2.0 - delta)))


def C1_tp_max(p, delta):
    """Closed-form max of C1: g(p) + tail constant."""
    p = _check("p", p, 0.0, 1.0, hi_closed=True)
    delta = _check("delta", delta, 0.0, 1.0, lo_closed=True)
    return _out(_g(p) + _tail_constant(p, delta))


def C2_tp_max(p, delta):
    """Closed-form max of C2: (2 - delta)^(1 - 2/p) g(p) + tail constant."""
    p = _check("p", p, 0.0, 1.0, hi_closed=True)
    delta = _check("delta", delta, 0.0, 1.0, lo_closed=True)
    return _out(np.power(2.0 - delta, 1.0 - 2.0 / p) * _g(p) + _tail_constant(p, delta))


# =============================================================================
# Block-sum constants
# =============================================================================

def C1_p(p):
    """
    Constant of the sorted-block shift inequality.

    (p/2)^(1/2) (2/(2-p))^(1/2 - 1/p) on (0, p*], 2^(1/2 - 1/p) on (p*, 1].
    """
    p = _check("p", p, 0.0, 1.0, hi_closed=True)
    left = np.sqrt(p / 2.0) * np.power(2.0 / (2.0 - p), 0.5 - 1.0 / p)
    right = np.power(2.0, 0.5 - 1.0 / p)
    return _out(np.where(_left_branch(p), left, right))


def prior_block_constant(p):
    """Earlier block constant p^(1/2) (2/(2-p))^(1/2 - 1/p); C1_p never exceeds it."""
    p = _check("p", p, 0.0, 1.0, hi_closed=True)
    return _out(np.sqrt(p) * np.power(2.0 / (2.0 - p), 0.5 - 1.0 / p))


# =============================================================================
# Monotone auxiliaries
# =============================================================================

def phi1(t):
    """((1 - t)/(1 + t))^(1/t - 1) on (0, 1); increasing."""
    t = _check("t", t, 0.0, 1.0)
    return _out(np.power((1.0 - t) / (1.0 + t), 1.0 / t - 1.0))


def phi2(t):
    """(1 - t)^(1/t) on (0, 1); decreasing."""
    t = _check("t", t, 0.0, 1.0)
    return _out(np.power(1.0 - t, 1.0 / t))


def varphi(p):
    """(1 - (3 - 2 sqrt 2) p)^(2/p) (1 - p/2)^(2/p - 1) on (0, 1]; increasing, varphi(1) = 6 - 4 sqrt 2."""
    p = _check("p", p, 0.0, 1.0, hi_closed=True)
    value = np.power(1.0 - VARPHI_SHIFT * p, 2.0 / p) * np.power(1.0 - p / 2.0, 2.0 / p - 1.0)
    return _out(value)


def varphi_bar(p):
    """Auxiliary whose sign gives the monotonicity of varphi; <= 0 on (0, 1]."""
    p = _check("p", p, 0.0, 1.0, hi_closed=True)
    sp = VARPHI_SHIFT * p
    value = sp / (1.0 - sp) + p / 2.0 + np.log1p(-sp) + np.log1p(-p / 2.0)
    return _out(value)


__all__ = [
    "f", "g", "p_star", "h", "p_bar", "p_bar_special",
    "big_C", "big_D", "big_C_bar", "big_D_bar",
    "C1_tp", "C2_tp", "C3_tp", "C1_tp_max", "C2_tp_max", "t1_star", "t2_star",
    "C1_p", "prior_block_constant",
    "phi1", "phi2", "varphi", "varphi_bar",
]
