"""Arithmetic-function toolkit: Möbius and Mertens functions, Dirichlet
convolution and inversion, and the sequences the cosine transform needs.

Sequences are 1-indexed as in number theory.  :class:`ArithSequence` stores
them in a float array whose slot 0 holds the value at n = 1.
"""

from __future__ import annotations

import math
import os
import threading
from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

__all__ = [
    "NotInvertible",
    "ArithSequence",
    "sieve_limit",
    "mobius",
    "mobius_prefix",
    "mertens",
    "dirichlet_convolve",
    "dirichlet_inverse",
    "alternating_dirichlet_inverse",
    "coefficient_sequence",
    "partial_sums",
    "power_of_two_sequence",
    "identity_sequence",
    "inverse_sequence",
    "INVERTIBILITY_THRESHOLD",
]

INVERTIBILITY_THRESHOLD = 1e-9
DEFAULT_SIEVE_LIMIT = 1 << 20


class NotInvertible(ValueError):
    """Raised when a sequence has no Dirichlet inverse (its first term vanishes)."""


@dataclass(frozen=True)
class ArithSequence:
    """Finite prefix a(1..L) of an arithmetic function."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.array(self.values, dtype=float).reshape(-1)
        if arr.size < 1:
            raise ValueError("an arithmetic sequence needs at least the n = 1 term")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return self.values.size

    def __getitem__(self, n: int) -> float:
        if not 1 <= n <= self.values.size:
            raise IndexError(f"index {n} outside 1..{self.values.size}")
        return float(self.values[n - 1])

    def __iter__(self):
        return iter(self.values.tolist())

    def prefix(self, L: int) -> "ArithSequence":
        if L > len(self):
            raise ValueError(f"requested {L} terms from a sequence of length {len(self)}")
        return ArithSequence(self.values[:L])

    def tolist(self) -> list[float]:
        return self.values.tolist()

    @property
    def invertible(self) -> bool:
        return abs(self.values[0]) >= INVERTIBILITY_THRESHOLD


SequenceLike = Union[ArithSequence, Iterable[float], np.ndarray]


def _as_sequence(a: SequenceLike) -> ArithSequence:
    if isinstance(a, ArithSequence):
        return a
    return ArithSequence(a if isinstance(a, np.ndarray) else list(a))


# ---------------------------------------------------------------------------
# Möbius sieve

def sieve_limit() -> int:
    """Largest n served from the sieve; ``ACT_SIEVE_LIMIT`` overrides the default 2**20."""
    raw = os.environ.get("ACT_SIEVE_LIMIT")
    if raw is None:
        return DEFAULT_SIEVE_LIMIT
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"ACT_SIEVE_LIMIT must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"ACT_SIEVE_LIMIT must be a positive integer, got {raw!r}")
    return value


_sieve_lock = threading.Lock()
_sieve_table = np.array([0, 1], dtype=np.int8)  # slot 0 unused


def _sieve(n: int) -> np.ndarray:
    """mu(0..n) with mu(0) = 0, via a prime-by-prime numpy sieve."""
    mu = np.ones(n + 1, dtype=np.int8)
    mu[0] = 0
    if n < 2:
        return mu
    is_prime = np.ones(n + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    for p in np.flatnonzero(is_prime):
        mu[p::p] *= -1
        sq = p * p
        if sq <= n:
            mu[sq::sq] = 0
    return mu


def _table(n: int) -> np.ndarray:
    global _sieve_table
    table = _sieve_table
    if table.size > n:
        return table
    with _sieve_lock:
        if _sieve_table.size <= n:
            # grow geometrically so repeated small extensions stay cheap
            target = max(n, 2 * (_sieve_table.size - 1), 1024)
            _sieve_table = _sieve(target)
        return _sieve_table


def _mobius_trial_division(n: int) -> int:
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1 if p == 2 else 2
    if n > 1:
        result = -result
    return result


def mobius(n: int) -> int:
    """Möbius function mu(n).

    >>> [mobius(n) for n in (1, 2, 12, 30)]
    [1, -1, 0, -1]
    """
    n = _positive_int(n, "mobius")
    if n <= sieve_limit():
        return int(_table(n)[n])
    return _mobius_trial_division(n)


def mobius_prefix(L: int) -> ArithSequence:
    """mu(1..L) as a sequence."""
    L = _positive_int(L, "mobius_prefix")
    limit = sieve_limit()
    if L <= limit:
        return ArithSequence(_table(L)[1 : L + 1])
    head = _table(limit)[1 : limit + 1].astype(float)
    tail = [_mobius_trial_division(n) for n in range(limit + 1, L + 1)]
    return ArithSequence(np.concatenate([head, np.asarray(tail, dtype=float)]))


def mertens(n: int) -> int:
    """Mertens function M(n) = sum of mu(1..n)."""
    n = _positive_int(n, "mertens")
    return int(round(float(np.sum(mobius_prefix(n).values))))


def _positive_int(n, name: str) -> int:
    if isinstance(n, bool) or int(n) != n:
        raise ValueError(f"{name} is defined on positive integers, got {n!r}")
    n = int(n)
    if n < 1:
        raise ValueError(f"{name} is defined on positive integers, got {n}")
    return n


# ---------------------------------------------------------------------------
# Dirichlet algebra

def identity_sequence(L: int) -> ArithSequence:
    """The convolution identity (1, 0, 0, ...)."""
    values = np.zeros(_positive_int(L, "identity_sequence"))
    values[0] = 1.0
    return ArithSequence(values)


def dirichlet_convolve(a: SequenceLike, b: SequenceLike, L: int) -> ArithSequence:
    """(a * b)(n) = sum over d | n of a(d) b(n/d), for n = 1..L."""
    a, b = _as_sequence(a), _as_sequence(b)
    L = _positive_int(L, "dirichlet_convolve")
    if L > len(a) or L > len(b):
        raise ValueError(f"convolution length {L} exceeds input lengths ({len(a)}, {len(b)})")
    av, bv = a.values, b.values
    out = np.zeros(L)
    for d in range(1, L + 1):
        if av[d - 1] != 0.0:
            q = L // d
            out[d - 1 :: d][:q] += av[d - 1] * bv[:q]
    return ArithSequence(out)


def dirichlet_inverse(a: SequenceLike, L: int | None = None) -> ArithSequence:
    """Dirichlet inverse of ``a`` up to length ``L``.

    Uses b(1) = 1/a(1) and b(n) = -(1/a(1)) sum_{d | n, d < n} b(d) a(n/d).
    Contributions are pushed forward from each finished b(d) to its
    multiples, which keeps the cost at O(L log L).

    Raises :class:`NotInvertible` when |a(1)| < 1e-9.
    """
    a = _as_sequence(a)
    L = len(a) if L is None else _positive_int(L, "dirichlet_inverse")
    if L > len(a):
        raise ValueError(f"inverse length {L} exceeds input length {len(a)}")
    a1 = a.values[0]
    if abs(a1) < INVERTIBILITY_THRESHOLD:
        raise NotInvertible(
            f"non-invertible coefficient sequence: first term {a1!r} is (numerically) zero"
        )
    av = a.values[:L]
    acc = np.zeros(L)  # acc[n-1] = sum_{d | n, d < n} b(d) a(n/d), accumulated so far
    b = np.zeros(L)
    for n in range(1, L + 1):
        b[n - 1] = (1.0 if n == 1 else -acc[n - 1]) / a1
        q = L // n
        if q >= 2 and b[n - 1] != 0.0:
            # multiples n*m for m = 2..q receive b(n) a(m)
            acc[2 * n - 1 :: n][: q - 1] += b[n - 1] * av[1:q]
    return ArithSequence(b)


def alternating_dirichlet_inverse(n: int) -> int:
    """n-th term of the Dirichlet inverse of (-1)^n.

    -mu(n) for odd n, and -2^(m-1) mu(s) for n = 2^m s with s odd.
    """
    n = _positive_int(n, "alternating_dirichlet_inverse")
    m = (n & -n).bit_length() - 1
    if m == 0:
        return -mobius(n)
    return -(1 << (m - 1)) * mobius(n >> m)


def coefficient_sequence(beta: float, L: int) -> ArithSequence:
    """a(n) = cos(2 pi n beta) for n = 1..L."""
    n = np.arange(1, _positive_int(L, "coefficient_sequence") + 1)
    # reduce n*beta mod 1 first so that beta = 1/2 yields exact +-1
    frac = np.mod(n * float(beta), 1.0)
    return ArithSequence(np.cos(2.0 * np.pi * frac))


def partial_sums(a: SequenceLike) -> ArithSequence:
    """Running totals A(n) = a(1) + ... + a(n)."""
    return ArithSequence(np.cumsum(_as_sequence(a).values))


def power_of_two_sequence(L: int) -> ArithSequence:
    """c(n) = n when n is a power of two, else 0."""
    L = _positive_int(L, "power_of_two_sequence")
    values = np.zeros(L)
    p = 1
    while p <= L:
        values[p - 1] = p
        p <<= 1
    return ArithSequence(values)


def inverse_sequence(beta: float, L: int) -> ArithSequence:
    """Dirichlet inverse of cos(2 pi n beta), n = 1..L.

    beta = 0 (mod 1) gives mu, beta = 1/2 (mod 1) gives the closed-form
    alternating inverse; anything else is inverted numerically.
    """
    L = _positive_int(L, "inverse_sequence")
    shift = math.fmod(float(beta), 1.0) % 1.0
    if shift == 0.0:
        return mobius_prefix(L)
    if shift == 0.5:
        return ArithSequence([alternating_dirichlet_inverse(n) for n in range(1, L + 1)])
    return dirichlet_inverse(coefficient_sequence(beta, L), L)
