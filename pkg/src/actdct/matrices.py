"""Matrix-vector form of the ACT with beta = 0.

The DCT matrix splits as C = C1 + C2, where

    C1 = sqrt(N/2) M' A^-1 W'        (Möbius part)
    C2 = -sqrt(1/2N) diag(0, M(floor((N-1)/k))) 1 1^T   (Mertens part)

M' = diag(1, M_{N-1}) is the extended Möbius matrix, W' stacks a row of 1/N
on top of the weighting-average matrix W, and A = diag(alpha_0..alpha_{N-1}).
A^-1 appears (not A) because the zeroth average is S_0 = sqrt(2)/N sum(v),
i.e. sqrt(2) times the 1/N row of W'.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numtheory as nt
from .dct import alpha
from .interpolation import weights_direct

__all__ = [
    "DecompositionBundle",
    "mobius_matrix",
    "divisor_matrix",
    "weight_average_matrix",
    "build_decomposition",
]


def _order(N, minimum: int = 1) -> int:
    if int(N) != N or N < minimum:
        raise ValueError(f"matrix order must be an integer >= {minimum}, got {N!r}")
    return int(N)


def mobius_matrix(N: int) -> np.ndarray:
    """M[i, j] = mu(j / i) when i | j, else 0 (1-based i, j); integer dtype."""
    N = _order(N)
    mu = nt.mobius_prefix(N).values.astype(np.int64)
    M = np.zeros((N, N), dtype=np.int64)
    for i in range(1, N + 1):
        q = N // i
        M[i - 1, i - 1 :: i][:q] = mu[:q]
    return M


def divisor_matrix(N: int) -> np.ndarray:
    """D[i, j] = 1 when i | j, else 0; the inverse of :func:`mobius_matrix`."""
    N = _order(N)
    D = np.zeros((N, N), dtype=np.int64)
    for i in range(1, N + 1):
        D[i - 1, i - 1 :: i] = 1
    return D


def weight_average_matrix(N: int) -> np.ndarray:
    """W[k-1, n] = (1/k) sum_{m<k} w_n(2 m N / k - 1/2), shape (N-1, N)."""
    N = _order(N, 2)
    W = np.empty((N - 1, N))
    for k in range(1, N):
        W[k - 1] = np.mean([weights_direct(2 * m * N / k - 0.5, N).weights for m in range(k)], axis=0)
    return W


@dataclass(frozen=True)
class DecompositionBundle:
    M_ext: np.ndarray
    alpha_diag: np.ndarray
    W: np.ndarray
    W_ext: np.ndarray
    C1: np.ndarray
    C2: np.ndarray

    @property
    def N(self) -> int:
        return self.C1.shape[0]


def build_decomposition(N: int) -> DecompositionBundle:
    N = _order(N, 2)
    M_ext = np.zeros((N, N))
    M_ext[0, 0] = 1.0
    M_ext[1:, 1:] = mobius_matrix(N - 1)

    W = weight_average_matrix(N)
    W_ext = np.zeros((N, N))
    W_ext[0] = 1.0 / N
    W_ext[1:] = W

    a = alpha(N)
    C1 = np.sqrt(N / 2) * M_ext @ np.diag(1.0 / a) @ W_ext

    mertens_caps = np.zeros(N)
    mertens_caps[1:] = [nt.mertens((N - 1) // k) for k in range(1, N)]
    C2 = -np.sqrt(1.0 / (2 * N)) * np.outer(mertens_caps, np.ones(N))
    return DecompositionBundle(M_ext, np.diag(a), W, W_ext, C1, C2)
