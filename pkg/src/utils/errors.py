"""Exception and warning types shared by every package."""


class LpRecoveryError(ValueError):
    """Base class for toolkit errors."""


class DomainError(LpRecoveryError):
    """A scalar argument lies outside its documented domain."""


class DimensionError(LpRecoveryError):
    """Inconsistent shapes or sizes."""


class ZeroColumnError(LpRecoveryError):
    """normalize_columns was given a matrix with an all-zero column."""


class RankDeficiencyError(LpRecoveryError):
    """The noiseless solver path needs A to have full row rank."""


class SortednessError(LpRecoveryError):
    """Vector must be non-negative and non-increasing."""


class ConfigError(LpRecoveryError):
    """Bad experiment configuration."""


class EnumerationCapError(LpRecoveryError):
    """
    Exact RIC refused because the subset count exceeds the cap.

    Attributes:
        subset_count: binomial(n, k) for the requested order
        cap: the enumeration cap in force
    """

    def __init__(self, subset_count: int, cap: int):
        self.subset_count = subset_count
        self.cap = cap
        super().__init__(
            f"Exact RIC needs {subset_count:,} column subsets, above the cap of {cap:,}. "
            f"Use --mode sampled or raise LPREC_ENUM_CAP."
        )


class ConvergenceWarning(UserWarning):
    """IRLS hit its iteration cap before the step-size criterion."""
