"""Laplace transforms of the bead positions on a fixed thread.

``laplace_L`` averages the orbital Laplace transform over every pattern;
``laplace_L_char`` gets the same number from a single orbital transform of
the top row with the spectrum padded by zeros.
"""

from __future__ import annotations

from typing import Sequence

import mpmath

from ..hciz import DEFAULT_DPS, orbital_laplace
from .patterns import ENUMERATION_LIMIT, SawtoothSpec, count_patterns, row_distribution


def _check_k(spec: SawtoothSpec, k: int, a: Sequence) -> None:
    if not 1 <= k <= spec.N:
        raise ValueError(f"k must be in [1, {spec.N}], got {k}")
    if len(a) != k:
        raise ValueError(f"need {k} values of a, got {len(a)}")


def laplace_L(spec: SawtoothSpec, k: int, a: Sequence, dps: int = DEFAULT_DPS,
              limit: int = ENUMERATION_LIMIT):
    """Average of orbital_laplace(a, row k) over all bead arrays (exhaustive)."""
    _check_k(spec, k, a)
    dist = row_distribution(spec, k, limit=limit)
    total = count_patterns(spec)
    with mpmath.workdps(dps):
        acc = mpmath.mpf(0)
        for row, mult in dist.items():
            acc += mult * orbital_laplace(a, row, dps=dps)
        return +(acc / total)


def _bernoulli_factor(x):
    """x / (e^x - 1), equal to 1 at x = 0."""
    if x == 0:
        return mpmath.mpf(1)
    return x / mpmath.expm1(x)


def laplace_L_char(spec: SawtoothSpec, k: int, a: Sequence, dps: int = DEFAULT_DPS):
    """(prod a_i/(e^{a_i}-1))^{N-k} times the orbital transform of the top row at (a, 0, .., 0)."""
    _check_k(spec, k, a)
    N = spec.N
    with mpmath.workdps(dps):
        am = [mpmath.mpf(x) if not isinstance(x, mpmath.mpf) else x for x in a]
        factor = mpmath.mpf(1)
        for x in am:
            factor *= _bernoulli_factor(x)
        padded = am + [mpmath.mpf(0)] * (N - k)
        return +(factor ** (N - k) * orbital_laplace(padded, spec.top, dps=dps))
