"""Fractional-index interpolation for the arithmetic cosine transform.

A sample at a real index r is a fixed linear combination of the N uniform
samples, v_r = sum_n w_n(r) v_n.  Two exact forms of the weights are
provided (the defining cosine sum and its Dirichlet-kernel closed form), plus
a cheap two-tap heuristic that touches at most two samples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

import numpy as np
import numpy.typing as npt

from .dct import as_signal

__all__ = [
    "InterpMethod",
    "WeightVector",
    "weights_direct",
    "dirichlet_kernel",
    "weights_kernel",
    "weights_heuristic",
    "stack_weights",
    "weights_for",
    "fold_index",
    "fold_fraction",
    "nearest_integer",
    "interpolate",
    "sinc_proximity_mse",
]

_SINGULAR = 1e-12


@dataclass(frozen=True)
class InterpMethod:
    """How fractional samples are produced.

    ``kind`` is ``"direct"`` or ``"kernel"`` for the exact weights and
    ``"heuristic"`` for the two-tap approximation, which uses ``eps``,
    ``scale`` (the 1.2 gain) and ``edge`` (the -0.35 tap of the boundary
    branches).
    """

    kind: Literal["direct", "kernel", "heuristic"] = "direct"
    eps: float = 0.1
    scale: float = 1.2
    edge: float = -0.35

    def __post_init__(self):
        if self.kind not in ("direct", "kernel", "heuristic"):
            raise ValueError(f"unknown interpolation kind {self.kind!r}")
        if self.kind == "heuristic" and not self.eps > 0:
            raise ValueError(f"heuristic tolerance must be positive, got {self.eps!r}")

    @classmethod
    def direct(cls) -> "InterpMethod":
        return cls("direct")

    @classmethod
    def kernel(cls) -> "InterpMethod":
        return cls("kernel")

    @classmethod
    def heuristic(cls, eps: float = 0.1, scale: float = 1.2, edge: float = -0.35) -> "InterpMethod":
        return cls("heuristic", eps=eps, scale=scale, edge=edge)

    @property
    def exact(self) -> bool:
        return self.kind != "heuristic"

    def describe(self) -> str:
        if self.exact:
            return self.kind
        return f"heuristic(eps={self.eps:g})"


@dataclass(frozen=True)
class WeightVector:
    weights: np.ndarray
    r: float
    N: int
    method: InterpMethod = field(default_factory=InterpMethod)

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    def __array__(self, dtype=None, copy=None):
        return self.weights if dtype is None else self.weights.astype(dtype)

    def apply(self, v: npt.ArrayLike) -> float:
        return float(self.weights @ as_signal(v))

    @property
    def support(self) -> np.ndarray:
        return np.flatnonzero(self.weights)


def _check_length(N) -> int:
    if int(N) != N or N < 1:
        raise ValueError(f"block length must be a positive integer, got {N!r}")
    return int(N)


def weights_direct(r: float, N: int) -> WeightVector:
    """w_n(r) = -1/N + (2/N) sum_k cos(pi k (n + 1/2)/N) cos(pi k (r + 1/2)/N)."""
    N = _check_length(N)
    k = np.arange(N)
    n = np.arange(N)
    at_n = np.cos(np.pi * np.outer(n + 0.5, k) / N)
    at_r = np.cos(np.pi * k * (float(r) + 0.5) / N)
    w = -1.0 / N + (2.0 / N) * (at_n @ at_r)
    return WeightVector(w, float(r), N, InterpMethod.direct())


def dirichlet_kernel(x, order: int):
    """D_order(x) = sin((order + 1/2) x) / sin(x / 2).

    Where |sin(x/2)| < 1e-12 the removable singularity is replaced by its
    limit 2*order + 1.  Accepts scalars or arrays.
    """
    if int(order) != order or order < 0:
        raise ValueError(f"kernel order must be a nonnegative integer, got {order!r}")
    x = np.asarray(x, dtype=float)
    # D is 2*pi periodic; reducing first keeps the quotient accurate near 2*pi*j
    x = x - 2.0 * np.pi * np.round(x / (2.0 * np.pi))
    den = np.sin(x / 2.0)
    singular = np.abs(den) < _SINGULAR
    safe = np.where(singular, 1.0, den)
    out = np.where(singular, 2.0 * order + 1.0, np.sin((order + 0.5) * x) / safe)
    return float(out) if out.ndim == 0 else out


def weights_kernel(r: float, N: int) -> WeightVector:
    """Closed form (1/2N) [D_{N-1}(pi (n + r + 1)/N) + D_{N-1}(pi (n - r)/N)]."""
    N = _check_length(N)
    n = np.arange(N)
    r = float(r)
    w = (dirichlet_kernel(np.pi * (n + r + 1) / N, N - 1) + dirichlet_kernel(np.pi * (n - r) / N, N - 1)) / (2 * N)
    return WeightVector(w, r, N, InterpMethod.kernel())


def fold_index(r: float, N: int) -> float:
    """Map ``r`` into [-1/2, N - 1/2] using the period 2N and the reflection r -> 2N - 1 - r.

    Exact weights are invariant under both maps, so the folded index
    interpolates the same value.
    """
    N = _check_length(N)
    u = math.fmod(float(r) + 0.5, 2 * N)
    if u < 0:
        u += 2 * N
    folded = u - 0.5
    if folded > N - 0.5:
        folded = 2 * N - 1 - folded
    return folded


def fold_fraction(r: Fraction, N: int) -> Fraction:
    """Exact-rational counterpart of :func:`fold_index`."""
    N = _check_length(N)
    u = (Fraction(r) + Fraction(1, 2)) % (2 * N)
    folded = u - Fraction(1, 2)
    if folded > N - Fraction(1, 2):
        folded = 2 * N - 1 - folded
    return folded


def nearest_integer(x: float) -> int:
    """Round half away from zero, like C's ``round`` and Matlab's ``round``."""
    return int(math.copysign(math.floor(abs(x) + 0.5), x))


def weights_heuristic(r: float, N: int, eps: float = 0.1, scale: float = 1.2, edge: float = -0.35) -> WeightVector:
    """Two-tap approximation of the exact weights.

    ``r`` is folded into [-1/2, N - 1/2] first.  With Delta = r - [r], an
    index within ``eps`` of an integer returns the plain (unscaled) unit
    vector; otherwise a linear main-lobe split is scaled by ``scale``.  The
    boundary cases [r] = -1 and [r] = N use the fixed pair (1, ``edge``).
    """
    N = _check_length(N)
    if N < 2:
        raise ValueError("heuristic weights need N >= 2")
    if not eps > 0:
        raise ValueError(f"heuristic tolerance must be positive, got {eps!r}")
    method = InterpMethod.heuristic(eps, scale, edge)
    rf = fold_index(r, N)
    c = nearest_integer(rf)
    if not -1 <= c <= N:
        raise ValueError(f"folded index {rf} rounds to {c}, outside [-1, {N}]")
    delta = rf - c
    w = np.zeros(N)

    if abs(delta) < eps:
        w[c if 0 <= c < N else (0 if c < 0 else N - 1)] = 1.0
        return WeightVector(w, float(r), N, method)

    left = (abs(delta) - delta) / 2
    right = (abs(delta) + delta) / 2
    if 1 <= c <= N - 2:
        w[c - 1], w[c], w[c + 1] = left, 1 - abs(delta), right
    elif c == 0:
        w[0], w[1] = 1 - abs(delta), right
    elif c == N - 1:
        w[N - 2], w[N - 1] = left, 1 - abs(delta)
    elif c == -1:
        w[0], w[1] = 1.0, edge
    else:
        w[N - 2], w[N - 1] = edge, 1.0
    return WeightVector(scale * w, float(r), N, method)


def weights_for(r: float, N: int, method: InterpMethod) -> WeightVector:
    if method.kind == "direct":
        return weights_direct(r, N)
    if method.kind == "kernel":
        return weights_kernel(r, N)
    return weights_heuristic(r, N, method.eps, method.scale, method.edge)


def stack_weights(points: npt.ArrayLike, N: int, method: InterpMethod) -> np.ndarray:
    """Stack the weight vectors for many indices into a (len(points), N) array.

    The exact methods are evaluated in one shot; row-by-row evaluation costs
    O(N^2) per point and dominates large plans.
    """
    N = _check_length(N)
    r = np.asarray(points, dtype=float).reshape(-1)
    n = np.arange(N)
    if method.kind == "direct":
        k = np.arange(N)
        at_n = np.cos(np.pi * np.outer(n + 0.5, k) / N)
        at_r = np.cos(np.pi * np.outer(r + 0.5, k) / N)
        return -1.0 / N + (2.0 / N) * (at_r @ at_n.T)
    if method.kind == "kernel":
        plus = np.pi * (n[None, :] + r[:, None] + 1) / N
        minus = np.pi * (n[None, :] - r[:, None]) / N
        return (dirichlet_kernel(plus, N - 1) + dirichlet_kernel(minus, N - 1)) / (2 * N)
    if r.size == 0:
        return np.zeros((0, N))
    return np.vstack([weights_for(x, N, method).weights for x in r])


def interpolate(v: npt.ArrayLike, r: float, method: InterpMethod | None = None) -> float:
    """Fractional-index sample of ``v`` at ``r``."""
    v = as_signal(v)
    return weights_for(r, v.size, method or InterpMethod.direct()).apply(v)


def sinc_proximity_mse(N: int, num: int = 1001) -> float:
    """MSE between the normalized kernel (1/2N) D_{N-1}(pi x / N) and sinc(x) on [-N/2, N/2]."""
    N = _check_length(N)
    x = np.linspace(-N / 2, N / 2, num)
    approx = dirichlet_kernel(np.pi * x / N, N - 1) / (2 * N)
    return float(np.mean((approx - np.sinc(x)) ** 2))
