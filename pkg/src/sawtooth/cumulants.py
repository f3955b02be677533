"""Free cumulants, the monotone Hurwitz combination K_d, and uniform[0,1] cumulants."""

from __future__ import annotations

from fractions import Fraction
from math import factorial, prod
from typing import Sequence

from .combinat import Partition, noncrossing_partitions, partitions_of
from .hurwitz import HurwitzTable, default_table
from .jets import TruncatedSeries, series_log


def _poly_mul_trunc(a: list, b: list, n: int) -> list:
    out = [0 * a[0]] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x == 0:
            continue
        for j, y in enumerate(b[: n + 1 - i]):
            out[i + j] += x * y
    return out


def free_cumulants(psi: Sequence) -> list:
    """kappa_1..kappa_D from moments psi_1..psi_D.

    Uses the block-removal recursion: the block containing 1 has size s and
    splits the rest into s intervals, so
    psi_n = sum_s kappa_s [z^(n-s)] M(z)^s with M(z) = 1 + sum psi_i z^i.
    """
    D = len(psi)
    if D < 1:
        raise ValueError("need at least one moment")
    if D > 10:
        raise ValueError(f"at most 10 moments supported, got {D}")
    one = psi[0] ** 0
    M = [one] + list(psi)
    # powers[s] = M^s truncated to degree D
    powers = [[one] + [0 * one] * D]
    for _ in range(D):
        powers.append(_poly_mul_trunc(powers[-1], M, D))
    kappa = []
    for n in range(1, D + 1):
        acc = psi[n - 1]
        for s in range(1, n):
            acc -= kappa[s - 1] * powers[s][n - s]
        kappa.append(acc)
    return kappa


def free_cumulants_bruteforce(psi: Sequence) -> list:
    """Oracle: Moebius-free inversion by summing over NC(n) explicitly."""
    kappa = []
    for n in range(1, len(psi) + 1):
        total = 0 * psi[0]
        for nc in noncrossing_partitions(n):
            sizes = nc.block_sizes()
            if sizes == [n]:
                continue
            total += prod(kappa[s - 1] for s in sizes)
        kappa.append(psi[n - 1] - total)
    return kappa


def monotone_K(d: int, psi: Sequence, table: HurwitzTable | None = None):
    """K_d = sum_{beta |- d} (-1)^(1 + l(beta)) Hvec_0((d), beta) psi_beta."""
    if d < 1 or len(psi) < d:
        raise ValueError(f"need d >= 1 and at least d moments, got d={d}, {len(psi)} moments")
    table = table or default_table()
    top = Partition([d])
    total = 0 * psi[0]
    for beta in partitions_of(d):
        h = table.monotone_by_genus(0, top, beta)
        sign = 1 if (1 + beta.length) % 2 == 0 else -1
        total += sign * h * prod(psi[b - 1] for b in beta.parts)
    return total


def uniform01_cumulants(D: int) -> list[Fraction]:
    """Classical cumulants c_1..c_D of uniform[0,1]: log((e^a - 1)/a) = sum c_d a^d / d!."""
    if not 1 <= D <= 20:
        raise ValueError(f"D must be in [1, 20], got {D}")
    mgf = TruncatedSeries([Fraction(1, factorial(m + 1)) for m in range(D + 1)])
    log = series_log(mgf)
    return [log[d] * factorial(d) for d in range(1, D + 1)]


def semicircle_moments(D: int) -> list[int]:
    """Moments of the standard semicircle law: Catalan numbers at even orders, zero at odd."""
    out = []
    for n in range(1, D + 1):
        if n % 2:
            out.append(0)
        else:
            m = n // 2
            out.append(factorial(2 * m) // (factorial(m) * factorial(m + 1)))
    return out
