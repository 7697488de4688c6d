"""
Seeded test instances y = A x_ref + e.

Usage:
    from solver import make_instance

    prob, x_ref = make_instance(6, 10, 2, noise_eps=0.0, seed=7)
"""

import numpy as np

from utils.errors import ConfigError, DimensionError
from ric.ric import normalize_columns
from .types import SensingProblem

ENSEMBLES = ("gaussian", "bernoulli")
SIGNALS = ("sparse", "compressible")

# Magnitude of the j-th largest entry of a compressible signal: j ** -COMPRESSIBLE_DECAY
COMPRESSIBLE_DECAY = 1.5

Seed = int | np.random.SeedSequence | np.random.Generator | None


def make_matrix(m: int, n: int, ensemble: str, rng: np.random.Generator) -> np.ndarray:
    """Column-normalized draw from the named ensemble."""
    if ensemble == "gaussian":
        raw = rng.standard_normal((m, n))
    elif ensemble == "bernoulli":
        raw = rng.choice([-1.0, 1.0], size=(m, n))
    else:
        raise ConfigError(f"ENSEMBLE must be one of {ENSEMBLES}, got {ensemble!r}")
    return np.array(normalize_columns(raw).entries)


def make_signal(n: int, k: int, signal: str, rng: np.random.Generator) -> np.ndarray:
    """
    Reference signal.

    'sparse': exactly k nonzeros on a uniform support, values standard normal.
    'compressible': every entry nonzero, sorted magnitudes j ** -1.5 in a
    random order with random signs (its best k-term error is positive).
    """
    x = np.zeros(n)
    if signal == "sparse":
        support = rng.choice(n, size=k, replace=False)
        x[support] = rng.standard_normal(k)
    elif signal == "compressible":
        magnitudes = np.arange(1, n + 1, dtype=float) ** -COMPRESSIBLE_DECAY
        signs = rng.choice([-1.0, 1.0], size=n)
        x[rng.permutation(n)] = signs * magnitudes
    else:
        raise ConfigError(f"SIGNAL must be one of {SIGNALS}, got {signal!r}")
    return x


def make_noise(m: int, epsilon: float, rng: np.random.Generator) -> np.ndarray:
    """Uniform draw from the sphere of radius epsilon (zeros when epsilon = 0)."""
    if epsilon == 0.0:
        return np.zeros(m)
    direction = rng.standard_normal(m)
    return epsilon * direction / np.linalg.norm(direction)


def make_instance(
    m: int,
    n: int,
    k: int,
    noise_eps: float = 0.0,
    seed: Seed = None,
    ensemble: str = "gaussian",
    signal: str = "sparse",
    A: np.ndarray | None = None,
) -> tuple[SensingProblem, np.ndarray]:
    """
    Draw (problem, x_ref) deterministically from `seed`.

    Args:
        m, n, k: sizes, 1 <= k <= m <= n
        noise_eps: ||e||_2, also used as the problem's epsilon
        seed: anything numpy.random.default_rng accepts
        ensemble: 'gaussian' or 'bernoulli'
        signal: 'sparse' or 'compressible'
        A: reuse this matrix instead of drawing one (the ensemble is ignored)

    Returns:
        (SensingProblem, x_ref)
    """
    if not 1 <= k <= m <= n:
        raise DimensionError(f"need 1 <= k <= m <= n, got k={k}, m={m}, n={n}")
    if noise_eps < 0.0:
        raise ConfigError(f"EPSILON must be >= 0, got {noise_eps}")

    rng = np.random.default_rng(seed)
    if A is None:
        A = make_matrix(m, n, ensemble, rng)
    elif A.shape != (m, n):
        raise DimensionError(f"A has shape {A.shape}, expected {(m, n)}")

    x_ref = make_signal(n, k, signal, rng)
    e = make_noise(m, float(noise_eps), rng)
    y = A @ x_ref + e
    return SensingProblem(A=A, y=y, epsilon=float(noise_eps), k=k), x_ref
