"""
Restricted isometry constants of dense sensing matrices.

For a column subset S the statistic is
    max(lambda_max(A_S^T A_S) - 1, 1 - lambda_min(A_S^T A_S))
and delta_k is its maximum over all |S| = k. exact_ric enumerates every
subset in colexicographic order; sampled_ric_lower_bound draws random ones.

Usage:
    from ric import exact_ric, normalize_columns

    A = normalize_columns(raw).entries
    est = exact_ric(A, 4)
    est.delta, est.argmax_subset
"""

from concurrent.futures import ThreadPoolExecutor, as_completed
from itertools import islice
from math import comb
from typing import Callable, Iterator

import numpy as np

from utils.constants import EIG_TOL, KIND_EXACT, KIND_SAMPLED
from utils.errors import DimensionError, DomainError, EnumerationCapError, ZeroColumnError
from utils import settings
from .types import RicEstimate, SensingMatrix, as_array

CHUNK_SIZE = 4096


def normalize_columns(A: SensingMatrix | np.ndarray) -> SensingMatrix:
    """Scale every column to unit l2 norm."""
    entries = as_array(A)
    norms = np.linalg.norm(entries, axis=0)
    zero = np.flatnonzero(norms == 0.0)
    if zero.size:
        raise ZeroColumnError(f"column {int(zero[0])} is all zeros")
    return SensingMatrix(entries / norms)


def colex_subsets(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """All k-subsets of range(n) in colexicographic order."""
    if k == 0:
        yield ()
        return
    for top in range(k - 1, n):
        for rest in colex_subsets(top, k - 1):
            yield rest + (top,)


def _subset_statistics(gram: np.ndarray, subsets: np.ndarray) -> np.ndarray:
    """Subset statistic for a (c, k) batch of index rows."""
    blocks = gram[subsets[:, :, None], subsets[:, None, :]]
    eig = np.linalg.eigvalsh(blocks)
    stat = np.maximum(eig[:, -1] - 1.0, 1.0 - eig[:, 0])
    stat[np.abs(stat) < EIG_TOL] = 0.0
    return np.maximum(stat, 0.0)


def _best_in_chunk(gram: np.ndarray, chunk: list[tuple[int, ...]]) -> tuple[float, tuple[int, ...]]:
    stats = _subset_statistics(gram, np.asarray(chunk, dtype=np.intp))
    best = int(np.argmax(stats))
    return float(stats[best]), chunk[best]


def _chunks(subsets: Iterator[tuple[int, ...]], size: int) -> Iterator[list[tuple[int, ...]]]:
    while chunk := list(islice(subsets, size)):
        yield chunk


def _estimate(raw: float, subset: tuple[int, ...], k: int, kind: str) -> RicEstimate:
    rip_fails = raw >= 1.0 - EIG_TOL
    return RicEstimate(
        delta=1.0 if rip_fails else raw,
        order=k,
        kind=kind,
        argmax_subset=tuple(int(i) for i in subset),
        raw_delta=raw,
        rip_fails=rip_fails,
    )


def _check_order(n: int, k: int) -> None:
    if not 1 <= k <= n:
        raise DimensionError(f"order k must satisfy 1 <= k <= n = {n}, got {k}")


def exact_ric(
    A: SensingMatrix | np.ndarray,
    k: int,
    cap: int | None = None,
    workers: int | None = None,
    progress_callback: Callable[[int, int], None] | None = None,
) -> RicEstimate:
    """
    Compute delta_k exactly by enumerating every k-column subset.

    Args:
        A: m x n matrix (normally column-normalized)
        k: order
        cap: refuse when binomial(n, k) exceeds this (default LPREC_ENUM_CAP)
        workers: threads evaluating subset chunks (default LPREC_WORKERS)
        progress_callback: called with (subsets_done, subsets_total) after each chunk

    Returns:
        RicEstimate of kind 'exact'. The argmax subset is the first one in
        colexicographic order attaining the maximum, independent of workers.

    Raises:
        EnumerationCapError: binomial(n, k) above the cap
    """
    entries = as_array(A)
    n = entries.shape[1]
    _check_order(n, k)

    total = comb(n, k)
    cap = settings.enum_cap() if cap is None else cap
    if total > cap:
        raise EnumerationCapError(total, cap)

    workers = settings.workers() if workers is None else max(1, workers)
    gram = entries.T @ entries
    chunks = _chunks(colex_subsets(n, k), CHUNK_SIZE)

    # (value, chunk index, subset); max value wins, earliest chunk breaks ties
    results: list[tuple[float, int, tuple[int, ...]]] = []
    done = 0

    if workers == 1:
        for index, chunk in enumerate(chunks):
            value, subset = _best_in_chunk(gram, chunk)
            results.append((value, index, subset))
            done += len(chunk)
            if progress_callback:
                progress_callback(done, total)
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            futures = {
                executor.submit(_best_in_chunk, gram, chunk): (index, len(chunk))
                for index, chunk in enumerate(chunks)
            }
            for future in as_completed(futures):
                index, size = futures[future]
                value, subset = future.result()
                results.append((value, index, subset))
                done += size
                if progress_callback:
                    progress_callback(done, total)

    value, _, subset = max(results, key=lambda r: (r[0], -r[1]))
    return _estimate(value, subset, k, KIND_EXACT)


def sampled_ric_lower_bound(
    A: SensingMatrix | np.ndarray,
    k: int,
    trials: int,
    seed: int | None = None,
) -> RicEstimate:
    """
    Lower bound on delta_k from `trials` uniformly random k-subsets.

    Subsets are drawn one after another from default_rng(seed), so a run with
    more trials sees a superset of the subsets of a run with fewer and the
    bound is non-decreasing in `trials`.
    """
    entries = as_array(A)
    n = entries.shape[1]
    _check_order(n, k)
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")

    rng = np.random.default_rng(seed)
    subsets = np.empty((trials, k), dtype=np.intp)
    for i in range(trials):
        subsets[i] = np.sort(rng.choice(n, size=k, replace=False))

    gram = entries.T @ entries
    stats = np.concatenate([
        _subset_statistics(gram, subsets[start:start + CHUNK_SIZE])
        for start in range(0, trials, CHUNK_SIZE)
    ])
    best = int(np.argmax(stats))
    return _estimate(float(stats[best]), tuple(subsets[best]), k, KIND_SAMPLED)
