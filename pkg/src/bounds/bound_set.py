"""
Theorem constants for one (p, delta_2k) pair.

Usage:
    from bounds import bound_set

    bs = bound_set(0.4, 0.8)
    bs.valid, bs.c0, bs.d1
"""

import math

from utils.constants import DELTA_MIN, REGIME_GENERAL
from .scalar import big_C, big_C_bar, big_D, big_D_bar
from .types import BoundSet, PExponent, Ric


def _denominator_reason(p: float, delta: float, c_value: float, label: str) -> str | None:
    if p >= 1.0:
        return "p = 1 lies outside the theorems' range p in (0, 1)"
    if delta < DELTA_MIN:
        return (f"delta {delta:g} is below sqrt(2)/2; pass delta = sqrt(2)/2 instead "
                f"(the RIP with delta also holds with any larger delta)")
    if not c_value < 1.0:
        return f"condition violated: {label} = {c_value:.6g} >= 1"
    return None


def _ratio(numerator: float, one_minus_c: float) -> float:
    return numerator / one_minus_c if one_minus_c > 0.0 else math.nan


def bound_set(p: float | PExponent, delta: float | Ric, regime: str = REGIME_GENERAL) -> BoundSet:
    """
    Compute C(p), C0, C1, D(p), D0, D1 and their n <= 4k analogues.

    Args:
        p: exponent in (0, 1]
        delta: delta_2k in [0, 1)
        regime: which validity flag `BoundSet.valid` reports

    Returns:
        BoundSet. Constants whose denominator 1 - C is not positive are NaN.
        A failed condition is reported through valid_* / reason_*, never raised.
    """
    p = float(PExponent(float(p)))
    delta = float(Ric(float(delta)))

    c_p = big_C(p, delta)
    d_p = big_D(p, delta)
    c_bar = big_C_bar(p, delta)
    d_bar = big_D_bar(p, delta)

    scale = (1.0 - delta) ** (p / 2.0)
    gap = 1.0 - c_p
    gap_bar = 1.0 - c_bar

    reason_general = _denominator_reason(p, delta, c_p, "C(p)")
    reason_special = _denominator_reason(p, delta, c_bar, "C_bar(p)")

    return BoundSet(
        p=p,
        delta=delta,
        regime=regime,
        c_p=c_p,
        c0=_ratio(2.0 * (1.0 + c_p), gap),
        c1=_ratio(2.0 ** (1.5 * p + 1.0) / scale, gap),
        d_p=d_p,
        d0=_ratio(2.0 * d_p, gap),
        d1=(2.0 ** p + _ratio(2.0 ** (1.5 * p) * d_p, gap)) / scale,
        c_bar=c_bar,
        c0_bar=_ratio(2.0 * (1.0 + c_bar), gap_bar),
        c1_bar=_ratio(2.0 ** (p + 2.0) / scale, gap_bar),
        d_bar=d_bar,
        d0_bar=_ratio(2.0 * d_bar, gap_bar),
        d1_bar=2.0 ** p * (1.0 + _ratio(2.0 * d_bar, gap_bar)) / scale,
        valid_general=reason_general is None,
        valid_special=reason_special is None,
        reason_general=reason_general,
        reason_special=reason_special,
    )
