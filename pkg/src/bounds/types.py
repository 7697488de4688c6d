"""
Bounds type definitions.

PExponent and Ric validate the two parameters every guarantee depends on;
BoundSet carries every derived constant for one (p, delta) pair.
"""

import math
from dataclasses import dataclass, asdict

from utils.constants import REGIME_GENERAL, REGIME_SPECIAL, REGIMES
from utils.errors import DomainError


@dataclass(frozen=True)
class PExponent:
    """
    The quasi-norm exponent.

    Attributes:
        p: exponent in (0, 1]
    """
    p: float

    def __post_init__(self):
        if not (math.isfinite(self.p) and 0.0 < self.p <= 1.0):
            raise DomainError(f"p must lie in (0, 1], got {self.p!r}")

    def __float__(self) -> float:
        return float(self.p)


@dataclass(frozen=True)
class Ric:
    """
    A restricted isometry constant usable by the bound formulas.

    Attributes:
        delta: value in [0, 1)
    """
    delta: float

    def __post_init__(self):
        if not (math.isfinite(self.delta) and 0.0 <= self.delta < 1.0):
            raise DomainError(f"delta must lie in [0, 1), got {self.delta!r}")

    def __float__(self) -> float:
        return float(self.delta)


@dataclass
class BoundSet:
    """
    All constants of the error bounds for one (p, delta_2k).

    Unbarred fields belong to the general case, barred (`*_bar`) fields to the
    n <= 4k case. Derived constants whose denominator 1 - C is not positive are
    NaN and the matching `valid_*` flag is False; `reason_*` says why.

    Attributes:
        p, delta: the inputs
        regime: 'general' or 'special_n_le_4k' (selects what `valid` reports)
        c_p, c0, c1, d_p, d0, d1: C(p), C0, C1, D(p), D0, D1
        c_bar, c0_bar, c1_bar, d_bar, d0_bar, d1_bar: barred analogues
    """
    p: float
    delta: float
    regime: str
    c_p: float
    c0: float
    c1: float
    d_p: float
    d0: float
    d1: float
    c_bar: float
    c0_bar: float
    c1_bar: float
    d_bar: float
    d0_bar: float
    d1_bar: float
    valid_general: bool
    valid_special: bool
    reason_general: str | None = None
    reason_special: str | None = None

    def __post_init__(self):
        if self.regime not in REGIMES:
            raise DomainError(f"regime must be one of {REGIMES}, got {self.regime!r}")

    @property
    def valid(self) -> bool:
        """Validity for the selected regime."""
        return self.valid_special if self.regime == REGIME_SPECIAL else self.valid_general

    @property
    def reason(self) -> str | None:
        return self.reason_special if self.regime == REGIME_SPECIAL else self.reason_general

    def to_dict(self, json_safe: bool = False) -> dict:
        """Field dict; with json_safe, NaN becomes None."""
        data = asdict(self)
        data["valid"] = self.valid
        if json_safe:
            data = {key: (None if isinstance(val, float) and not math.isfinite(val) else val)
                    for key, val in data.items()}
        return data


__all__ = ["PExponent", "Ric", "BoundSet", "REGIME_GENERAL", "REGIME_SPECIAL"]
