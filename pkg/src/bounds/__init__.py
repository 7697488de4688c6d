from .scalar import (
    f, g, p_star, h, p_bar, p_bar_special,
    big_C, big_D, big_C_bar, big_D_bar,
    C1_tp, C2_tp, C3_tp, C1_tp_max, C2_tp_max, t1_star, t2_star,
    C1_p, prior_block_constant,
    phi1, phi2, varphi, varphi_bar,
)
from .types import PExponent, Ric, BoundSet
from .bound_set import bound_set
