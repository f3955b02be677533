"""Harish-Chandra/Itzykson-Zuber integral: values, log-series and coefficients.

Conventions: the Vandermonde of x is prod_{i<j} (x_i - x_j) = det[x_i^(N-j)].
With these,

    HCIZ(z; a, b) = (prod_{p=1}^{N-1} p!) det[exp(z a_i b_j)]
                    / (z^(N(N-1)/2) V(a) V(b)).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Sequence

import mpmath

from .combinat import Partition, partitions_of, power_sum
from .hurwitz import HurwitzTable, default_table, steps_for_genus
from .jets import TruncatedSeries, series_det, series_log
from .linalg import SingularMatrixError, det_fraction, solve_fraction

DEFAULT_DPS = 40


class ConsistencyError(ArithmeticError):
    """An identity that must hold exactly failed; indicates a convention bug."""


def vandermonde(x: Sequence):
    out = 1
    n = len(x)
    for i in range(n):
        for j in range(i + 1, n):
            out *= x[i] - x[j]
    return out


def superfactorial(n: int) -> int:
    """prod_{p=1}^{n-1} p!"""
    return prod(factorial(p) for p in range(1, n))


def _check_strict(b: Sequence[int]) -> None:
    if any(b[i] <= b[i + 1] for i in range(len(b) - 1)):
        raise ValueError(f"b must be strictly decreasing, got {list(b)}")


def dimension(b: Sequence[int], N: int | None = None) -> int:
    """Weyl dimension prod_{i<j} (b_i - b_j) / (j - i) of the GL(N) irrep with particles b."""
    if N is not None and len(b) != N:
        raise ValueError(f"expected {N} particles, got {len(b)}")
    _check_strict(b)
    num = vandermonde([int(v) for v in b])
    den = superfactorial(len(b))
    if num % den:
        raise ConsistencyError(f"Weyl dimension of {list(b)} is not an integer")
    return num // den


@dataclass(frozen=True)
class SpectrumPair:
    a: tuple
    b: tuple

    def __init__(self, a: Sequence, b: Sequence):
        if len(a) != len(b):
            raise ValueError(f"spectra have different sizes {len(a)} and {len(b)}")
        if len(set(b)) != len(b):
            raise ValueError("b must have distinct entries")
        object.__setattr__(self, "a", tuple(a))
        object.__setattr__(self, "b", tuple(b))

    @property
    def N(self) -> int:
        return len(self.a)


def hciz_value(z, sp: SpectrumPair, dps: int = DEFAULT_DPS):
    """The HCIZ integral at coupling z for distinct spectra, as an mpmath number."""
    a, b = sp.a, sp.b
    N = sp.N
    if len(set(a)) != N:
        raise ValueError("repeated entries in a: use orbital_laplace for confluent spectra")
    with mpmath.workdps(dps):
        z = _to_mpf(z)
        if z == 0:
            return mpmath.mpf(1)
        am = [_to_mpf(x) for x in a]
        bm = [_to_mpf(x) for x in b]
        M = mpmath.matrix([[mpmath.exp(z * ai * bj) for bj in bm] for ai in am])
        num = superfactorial(N) * mpmath.det(M)
        den = z ** (N * (N - 1) // 2) * vandermonde(am) * vandermonde(bm)
        return +(num / den)


def _to_mpf(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def _falling(b: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= b - i
    return out


def _confluent_rows(nodes, exponents):
    """Rows (1/k!) d^k/dx^k x^e at each node x with multiplicity m, k < m."""
    rows = []
    for x, mult in nodes:
        for k in range(mult):
            rows.append([_falling(e, k) * x ** (e - k) / factorial(k) for e in exponents])
    return rows


def orbital_laplace(a: Sequence, b: Sequence[int], dps: int = DEFAULT_DPS):
    """HCIZ(1; a, b) for integer particles b and arbitrary (possibly repeated) a.

    Computed as the normalized character chi_b(e^a) / dim(b) times the
    correction prod_{i<j} (e^{a_i} - e^{a_j}) / (a_i - a_j), where equal
    pairs contribute the limit e^{a_i}.  The character is a ratio of
    (confluent) alternants; a node of multiplicity m contributes derivative
    rows, which are falling factorials and so valid for negative b as well.
    """
    N = len(a)
    if len(b) != N:
        raise ValueError(f"a and b must have the same length, got {N} and {len(b)}")
    _check_strict(b)
    b = [int(v) for v in b]
    with mpmath.workdps(dps):
        am = [_to_mpf(x) for x in a]
        groups: dict = {}
        for x in am:
            groups[x] = groups.get(x, 0) + 1
        nodes = [(mpmath.exp(x), m) for x, m in groups.items()]
        num = mpmath.det(mpmath.matrix(_confluent_rows(nodes, b)))
        den = mpmath.det(mpmath.matrix(_confluent_rows(nodes, list(range(N - 1, -1, -1)))))
        chi_ratio = num / den / dimension(b)
        corr = mpmath.mpf(1)
        for i in range(N):
            for j in range(i + 1, N):
                if am[i] == am[j]:
                    corr *= mpmath.exp(am[i])
                else:
                    corr *= (mpmath.exp(am[i]) - mpmath.exp(am[j])) / (am[i] - am[j])
        return +(chi_ratio * corr)


def orbital_laplace_perturbed(a: Sequence, b: Sequence[int], eps=1e-12, dps: int = 60):
    """Test oracle: split repeated a by multiples of eps and use the distinct-spectrum formula."""
    with mpmath.workdps(dps):
        seen: dict = {}
        shifted = []
        for x in a:
            k = seen.get(x, 0)
            seen[x] = k + 1
            shifted.append(_to_mpf(x) + k * mpmath.mpf(eps))
        return hciz_value(1, SpectrumPair(shifted, b), dps=dps)


# -- exact Maclaurin coefficients ---------------------------------------------

def _strict_partitions_upto(size: int, parts: int):
    """Partitions lambda with |lambda| <= size and at most `parts` parts (padded with zeros)."""
    out = []

    def rec(remaining, cap, acc):
        out.append(acc + [0] * (parts - len(acc)))
        if len(acc) == parts:
            return
        for p in range(min(remaining, cap), 0, -1):
            rec(remaining - p, p, acc + [p])

    rec(size, size, [])
    return out


def hciz_series(sp: SpectrumPair, order: int, method: str = "det") -> TruncatedSeries:
    """Exact jet of HCIZ(z; a, b) in z, for rational distinct a and b.

    method="det" expands det[exp(z a_i b_j)] with series_det and divides by
    z^(N(N-1)/2); method="schur" uses the Cauchy-Binet expansion
    det[exp(z a_i b_j)] = sum_lambda prod z^m_k/m_k! det[a_i^m_k] det[b_j^m_k]
    over m = lambda + staircase, which is far cheaper for large N.
    """
    a = [Fraction(x) for x in sp.a]
    b = [Fraction(x) for x in sp.b]
    N = len(a)
    if len(set(a)) != N:
        raise ValueError("hciz_series needs distinct a")
    stair = N * (N - 1) // 2
    norm = Fraction(superfactorial(N)) / (vandermonde(a) * vandermonde(b))
    if method == "det":
        jets = [[TruncatedSeries.exp_linear(ai * bj, order + stair) for bj in b] for ai in a]
        det = series_det(jets)
        try:
            shifted = det.shift(stair)
        except ArithmeticError as exc:
            raise ConsistencyError(f"HCIZ determinant does not vanish to order {stair}") from exc
        series = shifted.scale(norm)
    elif method == "schur":
        coeffs = [Fraction(0)] * (order + 1)
        for lam in _strict_partitions_upto(order, N):
            m = [lam[k] + N - 1 - k for k in range(N)]
            da = det_fraction([[x**e for e in m] for x in a])
            db = det_fraction([[x**e for e in m] for x in b])
            coeffs[sum(lam)] += da * db / prod(factorial(e) for e in m)
        series = TruncatedSeries(coeffs).scale(norm)
    else:
        raise ValueError(f"unknown method {method!r}")
    if series[0] != 1:
        raise ConsistencyError(f"normalized HCIZ series has constant term {series[0]}, expected 1")
    return series


def hciz_log_series(sp: SpectrumPair, order: int, method: str = "auto") -> TruncatedSeries:
    """Exact jet of log HCIZ(z; a, b) to the given order."""
    if method == "auto":
        method = "det" if sp.N <= 4 else "schur"
    return series_log(hciz_series(sp, order, method))


@dataclass
class CoeffTable:
    N: int
    d: int
    entries: dict = field(default_factory=dict)
    samples: list = field(default_factory=list)

    def __getitem__(self, key):
        alpha, beta = key
        return self.entries[(_as_partition(alpha), _as_partition(beta))]

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "d": self.d,
            "entries": {
                f"{a}|{b}": f"{v.numerator}/{v.denominator}"
                for (a, b), v in self.entries.items()
            },
        }

    @classmethod
    def from_json(cls, payload: dict) -> "CoeffTable":
        entries = {}
        for key, val in payload["entries"].items():
            a, b = key.split("|")
            entries[(Partition.parse(a), Partition.parse(b))] = Fraction(val)
        return cls(payload["N"], payload["d"], entries)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)


def _as_partition(p) -> Partition:
    return p if isinstance(p, Partition) else Partition(p)


# small distinct rationals; the first six match the canonical grid 1, 2, 3, 5, 7, 11
_A_POOL = [Fraction(v) for v in (1, 2, 3, 5, 7, 11, -1, -2, -3, 4, 6, 13)] + [Fraction(1, 2), Fraction(-1, 2), Fraction(3, 2)]
_B_POOL = [1, 2, 3, 5, 7, 11, 0, -1, -2, -3, 4, 6, 8, 9, 10, 12, 13]


def sample_spectra(N: int, count: int, attempt: int, pool: Sequence, seed: str) -> list[list]:
    rng = random.Random(f"{seed}/{N}/{count}/{attempt}")
    if len(pool) < N:
        raise ValueError(f"sample pool too small for N={N}")
    return [rng.sample(list(pool), N) for _ in range(count)]


def extract_coeffs(N: int, d: int, method: str = "auto", max_retries: int = 5) -> CoeffTable:
    """All C_N(alpha, beta), alpha, beta |- d, solved exactly from sampled log-HCIZ jets.

    For P = p(d) sample spectra a^(s) and P spectra b^(t), the order-d
    coefficient of log HCIZ times d! equals
    sum_{alpha,beta} C(alpha,beta) p_alpha(a^(s)) p_beta(b^(t)),
    a P^2 x P^2 linear system with a Kronecker-product design matrix.
    """
    if not 1 <= d <= N:
        raise ValueError(f"need 1 <= d <= N, got d={d}, N={N}")
    parts = partitions_of(d)
    P = len(parts)
    for attempt in range(max_retries + 1):
        a_samples = sample_spectra(N, P, attempt, _A_POOL, "a")
        b_samples = [sorted(b, reverse=True) for b in sample_spectra(N, P, attempt, _B_POOL, "b")]
        pa = [[power_sum(al, a, exact=True) for al in parts] for a in a_samples]
        pb = [[power_sum(be, b, exact=True) for be in parts] for b in b_samples]
        design = []
        rhs = []
        for s, a in enumerate(a_samples):
            for t, b in enumerate(b_samples):
                design.append([pa[s][i] * pb[t][j] for i in range(P) for j in range(P)])
                log_series = hciz_log_series(SpectrumPair(a, b), d, method)
                rhs.append(log_series[d] * factorial(d))
        try:
            sol = solve_fraction(design, rhs)
        except SingularMatrixError:
            continue
        entries = {(parts[i], parts[j]): sol[i * P + j] for i in range(P) for j in range(P)}
        return CoeffTable(N, d, entries, samples=[a_samples, b_samples])
    raise SingularMatrixError(f"design matrix singular after {max_retries} retries (N={N}, d={d})")


def genus_partial_sums(N: int, alpha: Partition, beta: Partition, g_max: int,
                       table: HurwitzTable | None = None) -> list[Fraction]:
    """Partial sums over g <= 0..g_max of the genus expansion of C_N(alpha, beta)."""
    table = table or default_table()
    d = alpha.d
    la, lb = alpha.length, beta.length
    sign = -1 if (la + lb) % 2 else 1
    prefactor = sign * Fraction(N) ** (2 - d - la - lb)
    out = []
    acc = Fraction(0)
    for g in range(g_max + 1):
        steps_for_genus(g, alpha, beta)
        acc += Fraction(table.monotone_by_genus(g, alpha, beta), N ** (2 * g))
        out.append(prefactor * acc)
    return out


def walk_series_partial_sum(N: int, alpha: Partition, beta: Partition, r_max: int,
                            table: HurwitzTable | None = None) -> Fraction:
    """(1/N^d) sum_{r<=r_max} (-1)^r H^r(alpha,beta) / N^r, the step-indexed form."""
    table = table or default_table()
    d = alpha.d
    return sum((Fraction((-1) ** r * table.monotone(r, alpha, beta), N ** (d + r)) for r in range(r_max + 1)),
               Fraction(0))


@dataclass
class PairReport:
    alpha: Partition
    beta: Partition
    exact: Fraction
    errors: list

    @property
    def abs_error(self) -> float:
        return abs(float(self.errors[-1]))

    @property
    def rel_error(self) -> float:
        return abs(float(self.errors[-1] / self.exact))

    @property
    def decreasing(self) -> bool:
        return self.errors[0] == 0 or abs(self.errors[-1]) < abs(self.errors[0])

    def to_json(self) -> dict:
        return {
            "alpha": str(self.alpha),
            "beta": str(self.beta),
            "C_exact": f"{self.exact.numerator}/{self.exact.denominator}",
            "errors_by_genus": [float(e) for e in self.errors],
            "abs_error": self.abs_error,
            "rel_error": self.rel_error,
            "decreasing": self.decreasing,
        }


@dataclass
class Theorem2Report:
    N: int
    d: int
    g_max: int
    rtol: float | None
    atol: float | None
    pairs: list

    def pair_passed(self, p: PairReport) -> bool:
        ok = p.decreasing
        if self.rtol is not None:
            ok = ok and p.rel_error < self.rtol
        if self.atol is not None:
            ok = ok and p.abs_error < self.atol
        return ok

    @property
    def passed(self) -> bool:
        return all(self.pair_passed(p) for p in self.pairs)

    def to_json(self) -> dict:
        pairs = []
        for p in self.pairs:
            row = p.to_json()
            row["passed"] = self.pair_passed(p)
            pairs.append(row)
        return {"N": self.N, "d": self.d, "g_max": self.g_max, "rtol": self.rtol, "atol": self.atol,
                "passed": self.passed, "pairs": pairs}


def verify_theorem2(N: int, d: int, g_max: int, rtol: float | None = 1e-6, atol: float | None = None,
                    table: HurwitzTable | None = None, coeffs: CoeffTable | None = None) -> Theorem2Report:
    """Compare exact C_N(alpha, beta) with the genus expansion truncated at g_max.

    A pair passes when its error shrank from g=0 to g_max and is within the
    given tolerances.  Only empirical convergence is reported; no remainder
    bound is asserted (for N close to d the series need not converge quickly).
    """
    coeffs = coeffs or extract_coeffs(N, d)
    pairs = []
    for (alpha, beta), exact in coeffs.entries.items():
        partial = genus_partial_sums(N, alpha, beta, g_max, table)
        pairs.append(PairReport(alpha, beta, exact, [exact - s for s in partial]))
    return Theorem2Report(N, d, g_max, rtol, atol, pairs)
