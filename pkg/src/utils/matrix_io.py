"""Delimited-text matrix and vector files.

Format (see docs/file_formats.md):
    # rows=<m> cols=<n>
    a11,a12,...,a1n
    ...

Vectors are written as a single column with header `# rows=<m> cols=1`.
Lines starting with # are comments on read.
"""

from pathlib import Path

import numpy as np

from .errors import DimensionError

DELIMITER = ","


def read_matrix(path: str | Path) -> np.ndarray:
    """
    Read a row-major delimited matrix.

    Args:
        path: File written by write_matrix (or any comma-separated table)

    Returns:
        2-D float array
    """
    data = np.loadtxt(path, delimiter=DELIMITER, comments="#", ndmin=2)
    if data.size == 0:
        raise DimensionError(f"{path}: empty matrix file")
    if not np.all(np.isfinite(data)):
        raise DimensionError(f"{path}: matrix has non-finite entries")
    return data


def read_vector(path: str | Path) -> np.ndarray:
    """Read a vector stored as one column (or one row)."""
    data = np.loadtxt(path, delimiter=DELIMITER, comments="#", ndmin=2)
    if min(data.shape) != 1:
        raise DimensionError(f"{path}: expected a single row or column, got shape {data.shape}")
    return data.ravel()


def write_matrix(path: str | Path, matrix: np.ndarray) -> None:
    """Write a matrix row-major with the documented header line."""
    matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
    rows, cols = matrix.shape
    np.savetxt(path, matrix, delimiter=DELIMITER, fmt="%.17g",
               header=f"rows={rows} cols={cols}")


def write_vector(path: str | Path, vector: np.ndarray) -> None:
    """Write a vector as a single column."""
    vector = np.asarray(vector, dtype=float).reshape(-1, 1)
    write_matrix(path, vector)
