"""
Block partition of the recovery error.

T0 holds the k largest |x_i|; the complement is sorted by |h_i| and cut
into consecutive blocks T1, T2, ... of size k.
"""

import numpy as np

from utils.constants import ERROR_NOISE_FLOOR
from utils.errors import DimensionError
from solver.norms import check_p
from .types import PartitionedError


def _vectors(x, x_hat) -> tuple[np.ndarray, np.ndarray]:
    x = np.asarray(x, dtype=float).ravel()
    x_hat = np.asarray(x_hat, dtype=float).ravel()
    if x.shape != x_hat.shape:
        raise DimensionError(f"x has length {x.shape[0]}, x_hat has {x_hat.shape[0]}")
    return x, x_hat


def best_k_indices(x: np.ndarray, k: int) -> np.ndarray:
    """Indices of the k largest |x_i|, ties to the lower index, returned ascending."""
    order = np.argsort(-np.abs(x), kind="stable")
    return np.sort(order[:k])


def best_k_tail_p_pow(x, k: int, p: float) -> float:
    """||x_T0c||_p^p, the best k-term approximation error in the p-th power."""
    x = np.asarray(x, dtype=float).ravel()
    mask = np.ones(x.shape[0], dtype=bool)
    mask[best_k_indices(x, k)] = False
    return float(np.sum(np.abs(x[mask]) ** check_p(p)))


def snap_estimate(x, x_hat) -> np.ndarray:
    """x_hat with rounding-level differences from x replaced by x."""
    x, x_hat = _vectors(x, x_hat)
    scale = max(np.max(np.abs(x), initial=0.0), np.max(np.abs(x_hat), initial=0.0))
    if scale == 0.0:
        return x_hat.copy()
    return np.where(np.abs(x - x_hat) <= ERROR_NOISE_FLOOR * scale, x, x_hat)


def partition_error(x, x_hat, k: int, p: float, min_length: int = 0) -> PartitionedError:
    """
    Split h = x - x_hat into T0, T1, ..., T_l.

    Args:
        x: reference signal
        x_hat: estimate
        k: block size, 1 <= k <= n
        p: exponent for t
        min_length: pad to at least this many entries (4k for the n <= 4k case)

    Returns:
        PartitionedError padded to a multiple of k
    """
    x, x_hat = _vectors(x, x_hat)
    p = check_p(p)
    n = x.shape[0]
    if not 1 <= k <= n:
        raise DimensionError(f"k must satisfy 1 <= k <= n = {n}, got {k}")

    h = x - x_hat
    head = best_k_indices(x, k)
    rest = np.setdiff1d(np.arange(n), head)
    rest = rest[np.argsort(-np.abs(h[rest]), kind="stable")]
    order = np.concatenate([head, rest])

    length = max(n, min_length)
    length = -(-length // k) * k
    pad = length - n

    h_sorted = np.concatenate([h[order], np.zeros(pad)])
    x_sorted = np.concatenate([x[order], np.zeros(pad)])
    order = np.concatenate([order, np.full(pad, -1)])

    tail_mass = np.sum(np.abs(h_sorted[k:]) ** p)
    first_mass = np.sum(np.abs(h_sorted[k:2 * k]) ** p)
    t = float(first_mass / tail_mass) if tail_mass > 0.0 else 0.0

    return PartitionedError(h=h_sorted, x=x_sorted, k=k, order=order, t=min(t, 1.0), p=p)
