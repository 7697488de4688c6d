"""
RIC type definitions.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from utils.constants import KIND_EXACT, KIND_SAMPLED, KIND_USER
from utils.errors import DimensionError, DomainError

KINDS = (KIND_EXACT, KIND_SAMPLED, KIND_USER)


@dataclass(frozen=True)
class SensingMatrix:
    """
    Dense m x n sensing matrix with finite entries.

    Attributes:
        entries: 2-D float array (copied, read-only)
    """
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        entries = np.array(self.entries, dtype=float)
        if entries.ndim != 2 or min(entries.shape) < 1:
            raise DimensionError(f"sensing matrix must be 2-D with m, n >= 1, got shape {entries.shape}")
        if not np.all(np.isfinite(entries)):
            raise DimensionError("sensing matrix has non-finite entries")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def m(self) -> int:
        return self.entries.shape[0]

    @property
    def n(self) -> int:
        return self.entries.shape[1]


def json_value(val):
    """Plain Python form of a numpy scalar; NaN and inf become None."""
    if isinstance(val, np.generic):
        val = val.item()
    if isinstance(val, float) and not math.isfinite(val):
        return None
    return val


def as_array(A: SensingMatrix | np.ndarray) -> np.ndarray:
    """Validated 2-D array view of A."""
    if isinstance(A, SensingMatrix):
        return A.entries
    return SensingMatrix(A).entries


@dataclass
class RicEstimate:
    """
    A value for delta_k plus how it was obtained.

    Attributes:
        delta: the estimate, clamped to 1 when the RIP fails at this order
        order: k
        kind: 'exact', 'sampled_lower_bound' or 'user_supplied'
        argmax_subset: column subset attaining delta (None for user-supplied)
        raw_delta: unclamped subset statistic
        rip_fails: True when raw_delta >= 1 (some k columns are linearly dependent)
    """
    delta: float
    order: int
    kind: str
    argmax_subset: tuple[int, ...] | None = None
    raw_delta: float | None = None
    rip_fails: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not self.delta >= 0.0:
            raise DomainError(f"delta must be >= 0, got {self.delta!r}")
        if self.raw_delta is None:
            self.raw_delta = self.delta

    @classmethod
    def user_supplied(cls, delta: float, order: int) -> "RicEstimate":
        """An upper bound on delta_k the caller vouches for."""
        return cls(delta=float(delta), order=order, kind=KIND_USER, rip_fails=delta >= 1.0)

    @property
    def usable(self) -> bool:
        """Whether this estimate can feed the bound formulas (delta < 1)."""
        return not self.rip_fails and self.delta < 1.0

    def to_dict(self, json_safe: bool = False) -> dict:
        data = {
            "delta": self.delta,
            "kind": self.kind,
            "order": self.order,
            "argmax_subset": list(self.argmax_subset) if self.argmax_subset is not None else None,
            "raw_delta": self.raw_delta,
            "rip_fails": self.rip_fails,
        }
        if json_safe:
            data = {key: ([json_value(v) for v in val] if isinstance(val, list) else json_value(val))
                    for key, val in data.items()}
        return data
