"""
Solver type definitions.
"""

from dataclasses import dataclass, field

import numpy as np

from utils.constants import (
    FINAL_STEP_TOL,
    LAMBDA_BRACKET,
    LAMBDA_MAX_STEPS,
    MAX_ITER_PER_LEVEL,
    SMOOTHING_DECAY,
    SMOOTHING_FLOOR_RATIO,
)
from utils.errors import DimensionError, DomainError
from ric.types import as_array, json_value


@dataclass
class SensingProblem:
    """
    y = A x + e with ||e||_2 <= epsilon.

    Attributes:
        A: m x n sensing matrix
        y: observation, length m
        epsilon: l2 noise budget (0 selects the equality-constrained path)
        k: sparsity level the instance is evaluated at
    """
    A: np.ndarray = field(repr=False)
    y: np.ndarray = field(repr=False)
    epsilon: float
    k: int

    def __post_init__(self):
        self.A = as_array(self.A)
        self.y = np.asarray(self.y, dtype=float).ravel()
        m, n = self.A.shape
        if self.y.shape[0] != m:
            raise DimensionError(f"y has length {self.y.shape[0]}, A has {m} rows")
        if not np.all(np.isfinite(self.y)):
            raise DimensionError("y has non-finite entries")
        if not (np.isfinite(self.epsilon) and self.epsilon >= 0.0):
            raise DomainError(f"epsilon must be >= 0, got {self.epsilon!r}")
        if not 1 <= self.k <= n:
            raise DimensionError(f"k must satisfy 1 <= k <= n = {n}, got {self.k}")
        self.epsilon = float(self.epsilon)

    @property
    def m(self) -> int:
        return self.A.shape[0]

    @property
    def n(self) -> int:
        return self.A.shape[1]


@dataclass
class IrlsOptions:
    """Continuation schedule and stopping rules for irls_recover."""
    max_iter_per_level: int = MAX_ITER_PER_LEVEL
    smoothing_decay: float = SMOOTHING_DECAY
    smoothing_floor_ratio: float = SMOOTHING_FLOOR_RATIO
    final_step_tol: float = FINAL_STEP_TOL
    lambda_bracket: tuple[float, float] = LAMBDA_BRACKET
    lambda_max_steps: int = LAMBDA_MAX_STEPS
    polish: bool = True


@dataclass
class RecoveryOutcome:
    """
    Result of one solve plus its certificate flags.

    Attributes:
        x_hat: recovered vector, length n
        residual: ||y - A x_hat||_2
        objective_p: ||x_hat||_p^p
        feasible: residual within the noise budget
        objective_dominates_reference: ||x_hat||_p <= ||x_ref||_p, None without a reference
        iterations: IRLS steps over all smoothing levels (and all lambda candidates)
        final_smoothing: smoothing parameter of the last level
        converged: the final level met its step criterion before the cap
        objective_increases: iterations where the smoothed objective rose
        lambda_used: penalty weight picked by the bisection (noisy path only)
    """
    x_hat: np.ndarray = field(repr=False)
    residual: float
    objective_p: float
    feasible: bool
    objective_dominates_reference: bool | None
    iterations: int
    final_smoothing: float
    converged: bool = True
    objective_increases: int = 0
    lambda_used: float | None = None

    @property
    def certified(self) -> bool:
        """Feasible and no worse than the reference in the lp objective."""
        return bool(self.feasible and self.objective_dominates_reference)

    def to_dict(self, json_safe: bool = False) -> dict:
        """Field dict; with json_safe, numpy scalars become Python values and NaN becomes None."""
        data = {
            "x_hat": self.x_hat.tolist(),
            "residual": self.residual,
            "objective_p": self.objective_p,
            "feasible": self.feasible,
            "objective_dominates_reference": self.objective_dominates_reference,
            "iterations": self.iterations,
            "final_smoothing": self.final_smoothing,
            "converged": self.converged,
            "objective_increases": self.objective_increases,
            "lambda_used": self.lambda_used,
        }
        if json_safe:
            data = {key: ([json_value(v) for v in val] if key == "x_hat" else json_value(val))
                    for key, val in data.items()}
        return data
