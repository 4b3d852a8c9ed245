"""Arithmetic cosine transform: the DCT-II spectrum from fractional-index
averages and generalized Möbius inversion."""

from .dct import dct_forward, dct_inverse, dct_matrix, eval_fractional, reference_sample
from .engine import (
    ActPlan,
    AverageVector,
    OpCounts,
    TransformReport,
    act_averages,
    aft_like_averages,
    build_plan,
    forward_act,
    reconstruct_spectrum,
)
from .interpolation import (
    InterpMethod,
    WeightVector,
    fold_index,
    interpolate,
    weights_direct,
    weights_heuristic,
    weights_kernel,
)
from .numtheory import ArithSequence, NotInvertible, dirichlet_convolve, dirichlet_inverse, mertens, mobius

__version__ = "0.1.0"
