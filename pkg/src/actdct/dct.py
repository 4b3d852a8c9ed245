"""Reference orthonormal DCT-II.

Naive O(N^2) evaluation on purpose: this is the oracle every arithmetic
path is checked against.

    V[k] = sqrt(2/N) a[k] sum_n v[n] cos(pi k (n + 1/2) / N),   a[0] = 1/sqrt(2), a[k] = 1

The inverse uses the same kernel, and :func:`eval_fractional` evaluates the
inverse at non-integer positions.
"""

from __future__ import annotations

import numpy as np
import numpy.typing as npt

__all__ = [
    "as_signal",
    "alpha",
    "dct_matrix",
    "dct_forward",
    "dct_inverse",
    "eval_fractional",
    "reference_sample",
]


def as_signal(x: npt.ArrayLike, name: str = "signal") -> np.ndarray:
    """Validate a 1-D finite float vector."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError(f"{name} must not be empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or Inf")
    return arr


def alpha(N: int) -> np.ndarray:
    a = np.ones(N)
    a[0] = 1.0 / np.sqrt(2.0)
    return a


def _kernel(N: int, positions: np.ndarray) -> np.ndarray:
    """cos(pi k (r + 1/2) / N) with k along rows, r along columns."""
    k = np.arange(N)[:, None]
    return np.cos(np.pi * k * (np.asarray(positions, dtype=float)[None, :] + 0.5) / N)


def dct_matrix(N: int) -> np.ndarray:
    """Orthonormal DCT-II matrix, C[k, n] = sqrt(2/N) a[k] cos(pi k (n + 1/2) / N)."""
    if int(N) != N or N < 1:
        raise ValueError(f"block length must be a positive integer, got {N!r}")
    N = int(N)
    return np.sqrt(2.0 / N) * alpha(N)[:, None] * _kernel(N, np.arange(N))


def dct_forward(v: npt.ArrayLike) -> np.ndarray:
    v = as_signal(v)
    N = v.size
    return np.sqrt(2.0 / N) * alpha(N) * (_kernel(N, np.arange(N)) @ v)


def dct_inverse(V: npt.ArrayLike) -> np.ndarray:
    V = as_signal(V, "spectrum")
    N = V.size
    return np.sqrt(2.0 / N) * (_kernel(N, np.arange(N)).T @ (alpha(N) * V))


def eval_fractional(V: npt.ArrayLike, r):
    """Inverse DCT evaluated at a real (possibly non-integer) index ``r``.

    ``r`` may be a scalar or an array; the result has the same shape.
    """
    V = as_signal(V, "spectrum")
    N = V.size
    r_arr = np.asarray(r, dtype=float)
    values = np.sqrt(2.0 / N) * ((alpha(N) * V) @ _kernel(N, r_arr.reshape(-1)))
    if r_arr.ndim == 0:
        return float(values[0])
    return values.reshape(r_arr.shape)


def reference_sample(v: npt.ArrayLike, r):
    """Fractional-index value implied by the DCT model of ``v``."""
    return eval_fractional(dct_forward(v), r)
