"""lp quasi-norms for 0 < p <= 1."""

import numpy as np

from utils.errors import DomainError


def check_p(p: float) -> float:
    p = float(p)
    if not (np.isfinite(p) and 0.0 < p <= 1.0):
        raise DomainError(f"p must lie in (0, 1], got {p!r}")
    return p


def lp_norm_pth_power(v, p: float) -> float:
    """sum |v_i|^p."""
    p = check_p(p)
    return float(np.sum(np.abs(np.asarray(v, dtype=float)) ** p))


def lp_norm(v, p: float) -> float:
    """(sum |v_i|^p)^(1/p); 0 for the zero vector."""
    total = lp_norm_pth_power(v, p)
    return total ** (1.0 / float(p)) if total > 0.0 else 0.0
