"""
Harness type definitions.
"""

from dataclasses import dataclass, asdict, field

from utils.constants import REGIME_GENERAL, REGIME_SPECIAL, REGIMES, STATUS_LABELS
from utils.errors import ConfigError
from solver.instances import ENSEMBLES, SIGNALS

P_RULE_FIXED = "fixed"
P_RULE_PBAR = "pbar_fraction"

DELTA_EXACT = "exact"
DELTA_USER = "user"
DELTA_SAMPLED = "sampled"


def _parse_number(key: str, text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"{key}: expected a number, got {text!r}")


@dataclass(frozen=True)
class PRule:
    """
    How p is chosen: fixed:<p> or pbar_fraction:<alpha> (p = alpha * p_bar(delta)).
    """
    kind: str
    value: float

    def __post_init__(self):
        if self.kind == P_RULE_FIXED:
            if not 0.0 < self.value <= 1.0:
                raise ConfigError(f"P_RULE: fixed p must lie in (0, 1], got {self.value}")
        elif self.kind == P_RULE_PBAR:
            if not 0.0 < self.value <= 1.0:
                raise ConfigError(f"P_RULE: alpha must lie in (0, 1], got {self.value}")
        else:
            raise ConfigError(f"P_RULE must be fixed:<p> or pbar_fraction:<alpha>, got {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> "PRule":
        kind, sep, value = str(text).strip().partition(":")
        if not sep:
            raise ConfigError(f"P_RULE must be fixed:<p> or pbar_fraction:<alpha>, got {text!r}")
        return cls(kind.strip(), _parse_number("P_RULE", value.strip()))

    def __str__(self) -> str:
        return f"{self.kind}:{self.value:g}"


@dataclass(frozen=True)
class DeltaSource:
    """Where delta_2k comes from: exact, user:<delta> or sampled."""
    kind: str
    value: float | None = None

    def __post_init__(self):
        if self.kind == DELTA_USER:
            if self.value is None or not 0.0 <= self.value:
                raise ConfigError(f"DELTA_SOURCE: user delta must be >= 0, got {self.value}")
        elif self.kind not in (DELTA_EXACT, DELTA_SAMPLED):
            raise ConfigError(f"DELTA_SOURCE must be exact, user:<delta> or sampled, got {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> "DeltaSource":
        kind, sep, value = str(text).strip().partition(":")
        kind = kind.strip()
        if kind == DELTA_USER:
            if not sep:
                raise ConfigError("DELTA_SOURCE: user needs a value, e.g. user:0.75")
            return cls(kind, _parse_number("DELTA_SOURCE", value.strip()))
        if sep:
            raise ConfigError(f"DELTA_SOURCE: {kind} takes no value, got {text!r}")
        return cls(kind)

    def __str__(self) -> str:
        return f"{self.kind}:{self.value:g}" if self.kind == DELTA_USER else self.kind


@dataclass
class ExperimentConfig:
    """
    One Monte-Carlo experiment.

    Attributes:
        m, n, k: sizes, k <= m <= n
        p_rule: how p is chosen
        epsilon: noise level (||e||_2 = epsilon)
        ensemble: 'gaussian' or 'bernoulli'
        signal: 'sparse' or 'compressible'
        trials: number of trials
        seed: master seed; trial i uses SeedSequence([seed, i])
        delta_source: exact, user:<delta> or sampled
        sampled_trials: subsets drawn when delta_source is sampled
        regime: 'general' or 'special_n_le_4k'
        fresh_matrix: draw a new matrix (and delta) per trial
        workers: threads running trials
    """
    m: int
    n: int
    k: int
    p_rule: PRule = field(default_factory=lambda: PRule(P_RULE_PBAR, 1.0))
    epsilon: float = 0.0
    ensemble: str = "gaussian"
    signal: str = "sparse"
    trials: int = 100
    seed: int = 0
    delta_source: DeltaSource = field(default_factory=lambda: DeltaSource(DELTA_EXACT))
    sampled_trials: int = 10_000
    regime: str = REGIME_GENERAL
    fresh_matrix: bool = False
    workers: int = 1

    def __post_init__(self):
        if isinstance(self.p_rule, str):
            self.p_rule = PRule.parse(self.p_rule)
        if isinstance(self.delta_source, str):
            self.delta_source = DeltaSource.parse(self.delta_source)
        if not 1 <= self.k <= self.m <= self.n:
            raise ConfigError(f"need 1 <= K <= M <= N, got K={self.k}, M={self.m}, N={self.n}")
        if self.epsilon < 0.0:
            raise ConfigError(f"EPSILON must be >= 0, got {self.epsilon}")
        if self.ensemble not in ENSEMBLES:
            raise ConfigError(f"ENSEMBLE must be one of {ENSEMBLES}, got {self.ensemble!r}")
        if self.signal not in SIGNALS:
            raise ConfigError(f"SIGNAL must be one of {SIGNALS}, got {self.signal!r}")
        if self.seed < 0:
            raise ConfigError(f"SEED must be >= 0, got {self.seed}")
        if self.trials < 1:
            raise ConfigError(f"TRIALS must be >= 1, got {self.trials}")
        if self.sampled_trials < 1:
            raise ConfigError(f"SAMPLED_TRIALS must be >= 1, got {self.sampled_trials}")
        if self.regime not in REGIMES:
            raise ConfigError(f"REGIME must be one of {REGIMES}, got {self.regime!r}")
        if self.regime == REGIME_SPECIAL and self.n > 4 * self.k:
            raise ConfigError(f"REGIME {REGIME_SPECIAL} needs N <= 4K, got N={self.n}, K={self.k}")
        if self.workers < 1:
            raise ConfigError(f"WORKERS must be >= 1, got {self.workers}")
        if 2 * self.k > self.n:
            raise ConfigError(f"need 2K <= N for delta_2k, got K={self.k}, N={self.n}")

    def to_dict(self) -> dict:
        data = asdict(self)
        data["p_rule"] = str(self.p_rule)
        data["delta_source"] = str(self.delta_source)
        return data


@dataclass
class TrialRecord:
    """
    Outcome of one trial.

    delta_estimate is the RicEstimate value; delta_used is what the bounds were
    evaluated at (raised to sqrt(2)/2 when smaller). Errors are measured after
    rounding-level entries of x_hat are snapped to x. bound_rhs_* is NaN when the
    bound was not evaluated (the barred ones outside the n <= 4k regime);
    slack_* is NaN unless the bound's hypotheses held.
    """
    trial: int
    delta_estimate: float
    delta_used: float
    delta_kind: str
    p_used: float
    feasible: bool
    objective_dominates_reference: bool
    converged: bool
    exact_recovery: bool
    error_p_pow: float
    error_2_pow: float
    bound_rhs_pnorm: float
    bound_rhs_2norm: float
    bound_rhs_pnorm_bar: float
    bound_rhs_2norm_bar: float
    slack_pnorm: float
    slack_2norm: float
    slack_pnorm_bar: float
    slack_2norm_bar: float
    status: str
    note: str | None = None

    def __post_init__(self):
        if self.status not in STATUS_LABELS:
            raise ValueError(f"unknown status {self.status!r}")

    def to_dict(self) -> dict:
        return asdict(self)
