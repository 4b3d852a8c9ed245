"""The arithmetic cosine transform (ACT).

Pipeline for a length-N block and shift beta:

1. plan the fractional indices r(k, m) = 2 (m + beta) N / k - 1/2 for
   k = 1..N-1, m = 0..k-1, fold them into [-1/2, N - 1/2] and deduplicate;
2. interpolate one sample per unique index and average them per k;
3. invert the averages with the Dirichlet inverse b of cos(2 pi n beta):

   V[k] = sqrt(N/2) (sum_{l <= L} b[l] S[k l] - mean(v) B(L)),   L = floor((N-1)/k)

   where B holds the partial sums of b (the Mertens function when beta = 0),
   and V[0] = sqrt(N) mean(v).

With exact interpolation the result is the DCT-II spectrum up to rounding.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
import numpy.typing as npt

from . import numtheory as nt
from .dct import as_signal, dct_forward
from .interpolation import InterpMethod, WeightVector, fold_fraction, fold_index, stack_weights, weights_direct

__all__ = [
    "ActPlan",
    "AverageVector",
    "OpCounts",
    "TransformReport",
    "build_plan",
    "raw_points",
    "act_averages",
    "aft_like_averages",
    "aft_like_coefficients",
    "reconstruct_spectrum",
    "forward_act",
    "naive_report",
    "nonzero_term_fraction",
    "interpolation_op_counts",
]

log = logging.getLogger(__name__)

_DEDUP_TOL = 1e-12


def _exact_beta(beta: float) -> Fraction | None:
    """beta as a Fraction when it is a multiple of 1/2, else None."""
    b = Fraction(beta)
    return b if (2 * b).denominator == 1 else None


def raw_points(N: int, beta: float = 0.0) -> list[list]:
    """Unfolded indices per k = 1..N-1 (Fractions when beta is a multiple of 1/2)."""
    exact = _exact_beta(beta)
    points = []
    for k in range(1, N):
        if exact is not None:
            # 2 (m + beta) N / k - 1/2 == (4 (m + beta) N - k) / (2 k)
            points.append([Fraction(4 * (m + exact) * N - k, 2 * k) for m in range(k)])
        else:
            points.append([2.0 * (m + beta) * N / k - 0.5 for m in range(k)])
    return points


@dataclass(frozen=True)
class ActPlan:
    """Precomputed sample points, weights and inverse sequence for one (N, beta, method).

    ``point_index[k-1]`` maps each of the k raw points of average S_k to its
    row in ``weight_matrix``.  Immutable once built; safe to share.
    """

    N: int
    beta: float
    method: InterpMethod
    points_per_k: tuple[tuple, ...]
    unique_points: tuple
    point_index: tuple[np.ndarray, ...]
    weight_matrix: np.ndarray
    inverse_seq: nt.ArithSequence
    correction_sums: nt.ArithSequence

    @property
    def exact_points(self) -> bool:
        return bool(self.unique_points) and isinstance(self.unique_points[0], Fraction)

    @property
    def weight_rows(self) -> tuple[WeightVector, ...]:
        return tuple(
            WeightVector(row, float(r), self.N, self.method)
            for row, r in zip(self.weight_matrix, self.unique_points)
        )

    def nonzero_terms(self, k: int) -> int:
        """Nonzero b[l] for l <= floor((N-1)/k)."""
        cap = (self.N - 1) // k
        return int(np.count_nonzero(self.inverse_seq.values[:cap]))


def build_plan(N: int, beta: float = 0.0, method: InterpMethod | None = None) -> ActPlan:
    """Plan the ACT for block length ``N`` (cached per argument tuple).

    Raises :class:`~actdct.numtheory.NotInvertible` when cos(2 pi beta) is
    numerically zero, e.g. beta = 1/4.
    """
    return _build_plan(int(N), float(beta), method or InterpMethod.direct())


@lru_cache(maxsize=128)
def _build_plan(N: int, beta: float, method: InterpMethod) -> ActPlan:
    if N < 2:
        raise ValueError(f"the ACT needs N >= 2, got {N}")
    first = nt.coefficient_sequence(beta, 1)
    if not first.invertible:
        raise nt.NotInvertible(
            f"non-invertible coefficient sequence: cos(2*pi*beta) = {first[1]:.3g} for beta = {beta:g}"
        )
    inverse = nt.inverse_sequence(beta, N - 1)

    raw = raw_points(N, beta)
    exact = isinstance(raw[0][0], Fraction)
    unique: list = []
    lookup: dict = {}
    index = []
    for pts in raw:
        rows = np.empty(len(pts), dtype=int)
        for m, r in enumerate(pts):
            if exact:
                key = fold_fraction(r, N)
            else:
                f = fold_index(r, N)
                key = round(f / _DEDUP_TOL)
                # a float landing on a bucket boundary: check the neighbours
                for probe in (key, key - 1, key + 1):
                    if probe in lookup and abs(float(unique[lookup[probe]]) - f) <= _DEDUP_TOL:
                        key = probe
                        break
            if key not in lookup:
                lookup[key] = len(unique)
                unique.append(key if exact else f)
            rows[m] = lookup[key]
        rows.setflags(write=False)
        index.append(rows)

    weights = stack_weights([float(r) for r in unique], N, method)
    weights.setflags(write=False)
    log.debug("plan N=%d beta=%g: %d raw points, %d unique", N, beta, sum(map(len, raw)), len(unique))
    return ActPlan(
        N=N,
        beta=beta,
        method=method,
        points_per_k=tuple(tuple(p) for p in raw),
        unique_points=tuple(unique),
        point_index=tuple(index),
        weight_matrix=weights,
        inverse_seq=inverse,
        correction_sums=nt.partial_sums(inverse),
    )


@dataclass(frozen=True)
class AverageVector:
    """ACT averages; ``S[k-1]`` is S_k for k = 1..N-1, ``S0`` = sqrt(2)/N sum(v)."""

    S: np.ndarray
    S0: float

    def __getitem__(self, k: int) -> float:
        if k == 0:
            return self.S0
        if not 1 <= k <= self.S.size:
            raise IndexError(f"average index {k} outside 0..{self.S.size}")
        return float(self.S[k - 1])

    def __len__(self) -> int:
        return self.S.size + 1


def act_averages(v: npt.ArrayLike, plan: ActPlan, center: bool = True) -> AverageVector:
    """S_k = (1/k) sum_m v at r(k, m), interpolated with the plan's method.

    With ``center`` (the default) only the zero-mean part of ``v`` is
    interpolated and the mean is added back exactly.  Exact weights sum to
    one, so this changes nothing for them; it keeps the heuristic's 1.2 gain
    off the DC level, which otherwise dominates its error.
    """
    v = as_signal(v)
    if v.size != plan.N:
        raise ValueError(f"signal length {v.size} does not match plan length {plan.N}")
    mean = float(v.mean()) if center else 0.0
    samples = plan.weight_matrix @ (v - mean)
    S = np.array([samples[rows].mean() for rows in plan.point_index]) + mean
    return AverageVector(S, float(np.sqrt(2.0) * v.sum() / v.size))


def aft_like_coefficients(L: int) -> nt.ArithSequence:
    """The (0, 1, 0, 1, ...) pattern the AFT-style averages produce; it has no Dirichlet inverse."""
    return nt.ArithSequence([1.0 if n % 2 == 0 else 0.0 for n in range(1, L + 1)])


def aft_like_averages(v: npt.ArrayLike, N: int | None = None) -> AverageVector:
    """AFT-style averages S_k = (1/2k) sum_{m=0}^{2k-1} v at m N / k - 1/2, exact weights.

    Substituting the inverse DCT gives, with gamma = 1/sqrt(2) - 1,

        S_k = sqrt(2/N) gamma V_0 + sqrt(2/N) sum_{s >= 0, 2 s k <= N-1} V_{2 s k}

    so only even multiples of k survive.  The implied coefficient sequence
    (see :func:`aft_like_coefficients`) starts with 0 and cannot be inverted.
    """
    v = as_signal(v)
    N = v.size if N is None else int(N)
    if N != v.size:
        raise ValueError(f"signal length {v.size} does not match N = {N}")
    if N < 2:
        raise ValueError(f"AFT-like averages need N >= 2, got {N}")
    cache: dict[Fraction, float] = {}
    S = np.empty(N - 1)
    for k in range(1, N):
        total = 0.0
        for m in range(2 * k):
            r = fold_fraction(Fraction(2 * m * N - k, 2 * k), N)
            if r not in cache:
                cache[r] = weights_direct(float(r), N).apply(v)
            total += cache[r]
        S[k - 1] = total / (2 * k)
    return AverageVector(S, float(np.sqrt(2.0) * v.sum() / N))


@dataclass
class OpCounts:
    additions: int = 0
    multiplications: int = 0

    def as_dict(self) -> dict:
        return {"additions": self.additions, "multiplications": self.multiplications}


def reconstruct_spectrum(
    S: AverageVector, v_mean: float, plan: ActPlan, counts: OpCounts | None = None
) -> np.ndarray:
    """Dirichlet-invert the averages into the DCT spectrum.

    If ``counts`` is given it is incremented with the reconstruction cost:
    one addition per nonzero b[l] term, and per component the two scalings
    (sqrt(N/2) on the sum, mean times B(L)) plus one multiplication for every
    nonzero b[l] with |b[l]| != 1.  V_0 costs one more multiplication.
    """
    N = plan.N
    if S.S.size != N - 1:
        raise ValueError(f"expected {N - 1} averages, got {S.S.size}")
    b = plan.inverse_seq.values
    B = plan.correction_sums.values
    scale = math.sqrt(N / 2)
    V = np.empty(N)
    V[0] = math.sqrt(N) * v_mean
    adds = 0
    mults = 1
    for k in range(1, N):
        cap = (N - 1) // k
        terms = b[:cap]
        nz = terms != 0.0
        acc = float(terms[nz] @ S.S[(np.flatnonzero(nz) + 1) * k - 1])
        V[k] = scale * (acc - v_mean * B[cap - 1])
        adds += int(np.count_nonzero(nz))
        mults += 2 + int(np.count_nonzero(nz & (np.abs(terms) != 1.0)))
    if counts is not None:
        counts.additions += adds
        counts.multiplications += mults
    return V


@dataclass
class TransformReport:
    """Spectrum plus how it was obtained."""

    spectrum: np.ndarray
    method: str
    beta: float | None
    interpolation: str | None
    exact: bool
    op_counts: OpCounts = field(default_factory=OpCounts)
    mse_vs_reference: float | None = None

    @property
    def n(self) -> int:
        return int(self.spectrum.size)

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "method": self.method,
            "beta": self.beta,
            "spectrum": [float(x) for x in self.spectrum],
            "op_counts": self.op_counts.as_dict(),
        }
        if self.mse_vs_reference is not None:
            out["mse_vs_reference"] = self.mse_vs_reference
        return out


def naive_report(v: npt.ArrayLike) -> TransformReport:
    """Reference DCT with the matrix-vector cost N^2 multiplications, N (N - 1) additions."""
    v = as_signal(v)
    N = v.size
    return TransformReport(
        spectrum=dct_forward(v),
        method="naive",
        beta=None,
        interpolation=None,
        exact=True,
        op_counts=OpCounts(additions=N * (N - 1), multiplications=N * N),
    )


def forward_act(
    v: npt.ArrayLike,
    beta: float = 0.0,
    method: InterpMethod | None = None,
    plan: ActPlan | None = None,
    center: bool = True,
) -> TransformReport:
    """DCT-II of ``v`` by the arithmetic cosine transform.

    A length-1 block has no averages and is answered by the reference DCT.
    Heuristic interpolation fills ``mse_vs_reference`` with the mean squared
    spectrum error against :func:`~actdct.dct.dct_forward`.  ``center`` is
    passed to :func:`act_averages`.
    """
    v = as_signal(v)
    method = method or (plan.method if plan is not None else InterpMethod.direct())
    label = "act-exact" if method.exact else "act-heuristic"
    if v.size == 1:
        return TransformReport(dct_forward(v), label, float(beta), method.describe(), method.exact)
    if plan is None:
        plan = build_plan(v.size, beta, method)
    elif plan.N != v.size:
        raise ValueError(f"signal length {v.size} does not match plan length {plan.N}")
    counts = OpCounts()
    spectrum = reconstruct_spectrum(act_averages(v, plan, center), float(v.mean()), plan, counts)
    report = TransformReport(spectrum, label, plan.beta, method.describe(), method.exact, counts)
    if not method.exact:
        report.mse_vs_reference = float(np.mean((spectrum - dct_forward(v)) ** 2))
    return report


def nonzero_term_fraction(beta: float, L: int) -> float:
    """Share of nonzero terms among b[1..L]; tends to 6/pi^2 for beta = 0."""
    b = nt.inverse_sequence(beta, L)
    return float(np.count_nonzero(b.values)) / L


def interpolation_op_counts(plan: ActPlan) -> OpCounts:
    """Cost of producing the averages from uniform samples.

    Per unique point: one multiplication per weight not equal to +-1 and
    one addition per extra tap.  Per average S_k: k - 1 additions and one
    scaling by 1/k (skipped for k = 1).
    """
    W = plan.weight_matrix
    nz = W != 0.0
    mults = int(np.count_nonzero(nz & (np.abs(W) != 1.0)))
    adds = int(np.sum(np.maximum(nz.sum(axis=1) - 1, 0)))
    for k in range(1, plan.N):
        adds += k - 1
        mults += k > 1
    return OpCounts(adds, mults)
