"""Floating-point summation with explicit error accounting.

Two modes: naive sequential accumulation (the bound grows with the term
count) and compensated summation via math.fsum, which returns the exactly
rounded sum of the inputs.  Both accept a single array or an iterable of
array chunks so callers can stream long series without materializing them.
"""

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["SumResult", "naive_sum", "compensated_sum", "EPS", "CHUNK"]

EPS = float(np.finfo(np.float64).eps)
CHUNK = 1 << 20


@dataclass(frozen=True)
class SumResult:
    value: float
    est_error: float
    n_terms: int


def _as_chunks(terms):
    if isinstance(terms, np.ndarray):
        return [terms]
    return terms


def naive_sum(terms):
    """Strict left-to-right accumulation; est_error = n * eps * sum|t|."""
    acc = 0.0
    abs_total = 0.0
    n = 0
    for chunk in _as_chunks(terms):
        chunk = np.asarray(chunk, dtype=np.float64)
        if chunk.size == 0:
            continue
        # prepend the carry so the accumulation order chains across chunks
        acc = float(np.add.accumulate(np.concatenate(([acc], chunk)))[-1])
        abs_total += float(np.abs(chunk).sum())
        n += chunk.size
    return SumResult(value=acc, est_error=n * EPS * abs_total, n_terms=n)


def compensated_sum(terms):
    """Exactly rounded sum (fsum per chunk, fsum of partials).

    est_error = 2 * eps * sum|t| is the documented bound; the realized error
    is at most a few ulps from re-rounding the chunk partials.
    """
    partials = []
    abs_total = 0.0
    n = 0
    for chunk in _as_chunks(terms):
        chunk = np.asarray(chunk, dtype=np.float64)
        if chunk.size == 0:
            continue
        partials.append(math.fsum(chunk.tolist()))
        abs_total += float(np.abs(chunk).sum())
        n += chunk.size
    return SumResult(value=math.fsum(partials), est_error=2.0 * EPS * abs_total, n_terms=n)
