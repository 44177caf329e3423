"""Input validation helpers shared by the public functions and estimators."""

from __future__ import annotations

import numpy as np

# Relative threshold for rank decisions (singular values below rtol * scale are zero).
RANK_RTOL = 1e-10


def check_vector(x, dim: int, name: str = "x") -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1 or arr.shape[0] != dim:
        raise ValueError(f"{name} must be a vector of length {dim}, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def check_vectors(vectors, dim: int, name: str = "vectors") -> np.ndarray:
    """Return a 2-d float array whose rows are vectors of length ``dim``.

    An empty input gives an array of shape ``(0, dim)``.
    """
    arr = np.asarray(vectors, dtype=float)
    if arr.size == 0:
        return np.zeros((0, dim))
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[1] != dim:
        raise ValueError(f"{name} must have shape (k, {dim}), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def check_square(matrix, dim: int, name: str = "matrix") -> np.ndarray:
    arr = np.asarray(matrix, dtype=float)
    if arr.shape != (dim, dim):
        raise ValueError(f"{name} must have shape ({dim}, {dim}), got {arr.shape}")
    return arr


def orthonormal_rows(vectors, rtol: float = RANK_RTOL, atol: float = 1e-12) -> np.ndarray:
    """Orthonormal basis (as rows) of the row span of ``vectors``.

    The rank is decided by singular values above ``max(rtol * s_max, atol)``.
    """
    arr = np.atleast_2d(np.asarray(vectors, dtype=float))
    if arr.size == 0:
        return np.zeros((0, arr.shape[-1] if arr.ndim == 2 else 0))
    _, s, vt = np.linalg.svd(arr, full_matrices=False)
    if s.size == 0 or s[0] <= atol:
        return np.zeros((0, arr.shape[1]))
    rank = int(np.sum(s > max(rtol * s[0], atol)))
    return vt[:rank]


def orthogonal_complement(rows: np.ndarray, dim: int) -> np.ndarray:
    """Orthonormal rows spanning the complement of an orthonormal row set in R^dim."""
    if rows.shape[0] == 0:
        return np.eye(dim)
    _, _, vt = np.linalg.svd(rows, full_matrices=True)
    return vt[rows.shape[0]:]
