from .types import PartitionedError, CheckReport
from .partition import partition_error, snap_estimate, best_k_indices, best_k_tail_p_pow
from .checks import (
    check_cone,
    check_tail_energy,
    check_reverse_holder,
    check_shift,
    check_shift_corollary,
    check_reverse_block_sum,
    check_sharper_block_constant,
    check_omega,
    check_A_blocksum,
    check_head_energy,
    check_head_p_bound,
    check_theorem_bounds,
    dominates,
)
from .sweep import run_lemma_suite, DEFAULT_P_GRID, DEFAULT_SIZES
