"""Exact p-norms of Fibonacci vectors and matrices, with a brute-force identity checker."""

from .core import (
    PrecisionLossError,
    binet_approx,
    fib,
    fib_fast_doubling,
    fib_pair,
    kfib,
    resolve_precision,
)
from .norms import ExactVector, NormOrder, PNormResult, matrix_pnorm, pdistance, pnorm, power_sum
from .structs import FibMatrix, build_F, build_Q, build_q, build_q_nr, build_S, multiplicities

__version__ = "0.1.0"

__all__ = [
    "ExactVector",
    "FibMatrix",
    "NormOrder",
    "PNormResult",
    "PrecisionLossError",
    "binet_approx",
    "build_F",
    "build_Q",
    "build_S",
    "build_q",
    "build_q_nr",
    "fib",
    "fib_fast_doubling",
    "fib_pair",
    "kfib",
    "matrix_pnorm",
    "multiplicities",
    "pdistance",
    "pnorm",
    "power_sum",
    "resolve_precision",
]
