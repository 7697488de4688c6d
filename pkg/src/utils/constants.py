"""Constants for the lp-recovery toolkit."""

import math

# =============================================================================
# Thresholds from the recovery guarantees
# =============================================================================

SQRT2_OVER_2 = math.sqrt(2.0) / 2.0

# Lower edge of the delta range the guarantees are stated for.
DELTA_MIN = SQRT2_OVER_2

# p-bar breakpoints (in delta)
PBAR_FIRST_BREAK = 0.7183
PBAR_SECOND_BREAK = 0.7729

# p-bar first branch slope: 50/31 * (1 - delta)
PBAR_FIRST_SLOPE = 50.0 / 31.0

# h(p) slopes on either side of p*
H_SLOPE_LEFT = 0.5
H_SLOPE_RIGHT = 0.62

# Special regime (n <= 4k): delta <= -(6 - 4*sqrt(2)) p + 1
SPECIAL_SLOPE = 6.0 - 4.0 * math.sqrt(2.0)
SPECIAL_PBAR_FACTOR = (3.0 + 2.0 * math.sqrt(2.0)) / 2.0

# 3 - 2*sqrt(2), used by varphi
VARPHI_SHIFT = 3.0 - 2.0 * math.sqrt(2.0)

# p* root finding
PSTAR_BRACKET = (1e-6, 1.0)
PSTAR_XTOL = 1e-10

# =============================================================================
# Numerical tolerances
# =============================================================================

# CheckReport: satisfied <=> lhs <= rhs * (1 + REL) + ABS
CHECK_REL_TOL = 1e-9
CHECK_ABS_TOL = 1e-12

# RIC eigenvalue snapping
EIG_TOL = 1e-10

# Feasibility: residual <= epsilon * (1 + FEAS_REL_TOL)
FEAS_REL_TOL = 1e-8

# Noiseless path: ||y - A x_hat|| <= NOISELESS_RESIDUAL * ||y||
NOISELESS_RESIDUAL = 1e-8

# Error entries |x_i - x_hat_i| <= this * max(|x|, |x_hat|) count as rounding;
# checks on solver output replace them by x_i first
ERROR_NOISE_FLOOR = 1e-10

# Exact recovery: ||x - x_hat||_2 <= this * max(1, ||x||_2)
EXACT_RECOVERY_TOL = 1e-6

# =============================================================================
# Solver schedule
# =============================================================================

SMOOTHING_DECAY = 10.0         # sigma_{t+1} = sigma_t / 10
SMOOTHING_FLOOR_RATIO = 1e-9   # floor relative to sigma_0
MAX_ITER_PER_LEVEL = 500
FINAL_STEP_TOL = 1e-9
LEVEL_STEP_RATIO = 100.0       # intermediate levels stop once ||dx|| < sigma / 100
OBJECTIVE_INCREASE_TOL = 1e-6  # relative rise in the smoothed objective counted as an increase
LAMBDA_BRACKET = (1e-6, 1e6)
LAMBDA_MAX_STEPS = 60
RESIDUAL_TARGET_LOW = 0.9      # accept residual in [0.9 eps, eps]
SUPPORT_REL_THRESHOLD = 1e-6   # |x_i| <= this * max|x| counts as zero in the polish

# =============================================================================
# RIC enumeration
# =============================================================================

DEFAULT_ENUM_CAP = 1_000_000

# RicEstimate.kind
KIND_EXACT = "exact"
KIND_SAMPLED = "sampled_lower_bound"
KIND_USER = "user_supplied"

# =============================================================================
# Regimes
# =============================================================================

REGIME_GENERAL = "general"
REGIME_SPECIAL = "special_n_le_4k"
REGIMES = (REGIME_GENERAL, REGIME_SPECIAL)

# =============================================================================
# Trial status
# =============================================================================

STATUS_PASS = "pass"
STATUS_UNMET = "hypotheses_unmet"
STATUS_VIOLATION = "violation"

STATUS_LABELS = {
    STATUS_PASS: "Pass",
    STATUS_UNMET: "Hypotheses unmet",
    STATUS_VIOLATION: "Violation",
}

# CLI exit codes
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2
