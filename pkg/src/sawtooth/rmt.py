"""GUE sampling, Hermitian eigenvalues and two-sample comparisons."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import stats


class EigenvalueError(ArithmeticError):
    pass


@dataclass(frozen=True)
class HermitianMatrix:
    """Stored as the real diagonal plus the strictly lower triangle, so symmetry is exact."""

    k: int
    diag: np.ndarray
    lower: np.ndarray  # complex, length k(k-1)/2, row-major over i > j

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")
        if self.diag.shape != (self.k,) or self.lower.shape != (self.k * (self.k - 1) // 2,):
            raise ValueError("entry arrays do not match the size")

    def to_array(self) -> np.ndarray:
        a = np.diag(self.diag.astype(complex))
        il = np.tril_indices(self.k, -1)
        a[il] = self.lower
        a[il[1], il[0]] = np.conj(self.lower)
        return a

    @classmethod
    def from_array(cls, a) -> "HermitianMatrix":
        a = np.asarray(a, dtype=complex)
        k = a.shape[0]
        if a.shape != (k, k) or not np.allclose(a, a.conj().T, atol=1e-12):
            raise ValueError("matrix is not Hermitian")
        return cls(k, a.diagonal().real.copy(), a[np.tril_indices(k, -1)].copy())

    def trace(self) -> float:
        return float(self.diag.sum())


def sample_gue(k: int, seed: int | np.random.Generator) -> HermitianMatrix:
    """Density proportional to exp(-Tr X^2 / 2): log E exp(Tr AX) = Tr(A^2)/2."""
    if k < 1:
        raise ValueError("k must be positive")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    diag = rng.standard_normal(k)
    m = k * (k - 1) // 2
    lower = (rng.standard_normal(m) + 1j * rng.standard_normal(m)) * math.sqrt(0.5)
    return HermitianMatrix(k, diag, lower)


def eigenvalues_sorted(h: HermitianMatrix) -> list[float]:
    """Eigenvalues in decreasing order (LAPACK Hermitian solver)."""
    try:
        w = np.linalg.eigvalsh(h.to_array())
    except np.linalg.LinAlgError as exc:
        raise EigenvalueError(str(exc)) from exc
    return [float(v) for v in w[::-1]]


def gue_eigenvalue_samples(k: int, count: int, seed: int | np.random.Generator) -> np.ndarray:
    """count x k array of sorted GUE eigenvalues."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    return np.array([eigenvalues_sorted(sample_gue(k, rng)) for _ in range(count)])


@dataclass
class MeanComparison:
    mean_a: float
    se_a: float
    mean_b: float
    se_b: float

    @property
    def z(self) -> float:
        se = math.hypot(self.se_a, self.se_b)
        return (self.mean_a - self.mean_b) / se if se > 0 else 0.0

    def to_json(self) -> dict:
        return {"mean_a": self.mean_a, "se_a": self.se_a, "mean_b": self.mean_b, "se_b": self.se_b, "z": self.z}


@dataclass
class ComparisonReport:
    ks_statistic: list[float]
    ks_pvalue: list[float]
    p1: MeanComparison
    p2: MeanComparison
    n_a: int
    n_b: int
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "n_a": self.n_a,
            "n_b": self.n_b,
            "ks": [{"coordinate": i + 1, "statistic": s, "pvalue": p}
                   for i, (s, p) in enumerate(zip(self.ks_statistic, self.ks_pvalue))],
            "p1": self.p1.to_json(),
            "p2": self.p2.to_json(),
            **self.extra,
        }


def _mean_se(x: np.ndarray) -> tuple[float, float]:
    se = float(x.std(ddof=1) / math.sqrt(len(x))) if len(x) > 1 else 0.0
    return float(x.mean()), se


def compare_samples(A: Sequence[Sequence[float]], B: Sequence[Sequence[float]]) -> ComparisonReport:
    """Per-coordinate two-sample KS (asymptotic p-values) plus E[p1], E[p2] with standard errors."""
    a = np.asarray(A, dtype=float)
    b = np.asarray(B, dtype=float)
    if a.ndim == 1:
        a = a[:, None]
    if b.ndim == 1:
        b = b[:, None]
    if len(a) == 0 or len(b) == 0:
        raise ValueError("both samples must be nonempty")
    if a.shape[1] != b.shape[1]:
        raise ValueError(f"dimension mismatch: {a.shape[1]} vs {b.shape[1]}")
    ks_s, ks_p = [], []
    for l in range(a.shape[1]):
        res = stats.ks_2samp(a[:, l], b[:, l], method="asymp")
        ks_s.append(float(res.statistic))
        ks_p.append(float(res.pvalue))
    p1 = MeanComparison(*_mean_se(a.sum(axis=1)), *_mean_se(b.sum(axis=1)))
    p2 = MeanComparison(*_mean_se((a**2).sum(axis=1)), *_mean_se((b**2).sum(axis=1)))
    return ComparisonReport(ks_s, ks_p, p1, p2, len(a), len(b))
