"""
Lemma type definitions.
"""

from dataclasses import dataclass, field

import numpy as np

from utils.constants import CHECK_ABS_TOL, CHECK_REL_TOL


@dataclass
class PartitionedError:
    """
    Error vector h = x - x_hat split into blocks of size k.

    Positions are reordered so that T0 (the k largest |x_i|, stable by index)
    comes first and the rest follows sorted by |h| non-increasing (stable by
    index), then zero-padded to (l + 1) k entries.

    Attributes:
        h: reordered, padded error vector
        x: reference signal in the same order and padding
        k: block size
        order: original index of every position (-1 for padding)
        t: ||h_T1||_p^p / ||h_T0c||_p^p, 0 when the denominator is 0
        p: exponent t was computed with
    """
    h: np.ndarray = field(repr=False)
    x: np.ndarray = field(repr=False)
    k: int
    order: np.ndarray = field(repr=False)
    t: float
    p: float

    @property
    def l(self) -> int:
        """Number of blocks after T0."""
        return self.h.shape[0] // self.k - 1

    @property
    def blocks(self) -> list[np.ndarray]:
        """Position index sets T0, T1, ..., T_l."""
        return [np.arange(i * self.k, (i + 1) * self.k) for i in range(self.l + 1)]

    def block(self, i: int) -> np.ndarray:
        """h restricted to T_i (empty past the last block)."""
        return self.h[i * self.k:(i + 1) * self.k]

    @property
    def head(self) -> np.ndarray:
        return self.h[:self.k]

    @property
    def tail(self) -> np.ndarray:
        """h on T0 complement."""
        return self.h[self.k:]

    @property
    def far_tail(self) -> np.ndarray:
        """h on T2 through T_l."""
        return self.h[2 * self.k:]

    def tail_p_pow(self) -> float:
        return float(np.sum(np.abs(self.tail) ** self.p))

    def embed(self, values: np.ndarray, n: int) -> np.ndarray:
        """Scatter position-ordered values back to a length-n vector in original coordinates."""
        out = np.zeros(n)
        real = self.order >= 0
        out[self.order[real]] = values[real]
        return out


@dataclass
class CheckReport:
    """
    One inequality lhs <= rhs evaluated on concrete data.

    Attributes:
        name: which inequality
        lhs, rhs: both sides
        satisfied: lhs <= rhs * (1 + 1e-9) + 1e-12
        slack: rhs - lhs
        hypotheses_met: False when a precondition of the inequality fails;
            such reports are excluded from pass/violation counts
        note: why hypotheses were not met
    """
    name: str
    lhs: float
    rhs: float
    satisfied: bool
    slack: float
    hypotheses_met: bool = True
    note: str | None = None

    @classmethod
    def compare(cls, name: str, lhs: float, rhs: float,
                hypotheses_met: bool = True, note: str | None = None) -> "CheckReport":
        lhs, rhs = float(lhs), float(rhs)
        satisfied = bool(lhs <= rhs * (1.0 + CHECK_REL_TOL) + CHECK_ABS_TOL)
        return cls(name, lhs, rhs, satisfied, rhs - lhs, hypotheses_met, note)

    @property
    def violated(self) -> bool:
        """A genuine counterexample: preconditions held but the inequality failed."""
        return self.hypotheses_met and not self.satisfied

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "satisfied": self.satisfied,
            "slack": self.slack,
            "hypotheses_met": self.hypotheses_met,
            "note": self.note,
        }
