"""Sawtooth domains and their bead arrays (Gelfand-Tsetlin patterns).

Row k of a bead array holds the k bead positions on thread k, strictly
decreasing.  Adjacent rows interlace as x[k+1][i] > x[k][i] >= x[k+1][i+1],
so row k's i-th bead ranges over [x[k+1][i+1], x[k+1][i] - 1] and these
ranges are disjoint.  Row N is the boundary condition.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterator, Sequence

from ..hciz import superfactorial, vandermonde

ENUMERATION_LIMIT = 10**6


class EnumerationLimitError(RuntimeError):
    pass


@dataclass(frozen=True)
class SawtoothSpec:
    N: int
    top: tuple[int, ...]

    def __init__(self, top: Sequence[int], N: int | None = None):
        top = tuple(int(v) for v in top)
        if N is None:
            N = len(top)
        if N < 1 or len(top) != N:
            raise ValueError(f"rank {N} needs a top row of {N} entries, got {len(top)}")
        if any(top[i] <= top[i + 1] for i in range(N - 1)):
            raise ValueError(f"top row must be strictly decreasing: {list(top)}")
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "top", top)

    def shifted(self, t: int) -> "SawtoothSpec":
        return SawtoothSpec([v + t for v in self.top])

    def to_json(self) -> dict:
        return {"N": self.N, "top": list(self.top)}

    @classmethod
    def from_json(cls, payload: dict) -> "SawtoothSpec":
        return cls(payload["top"], payload.get("N"))

    @classmethod
    def load(cls, path: str | Path) -> "SawtoothSpec":
        return cls.from_json(json.loads(Path(path).read_text()))


def interlaces(upper: Sequence[int], lower: Sequence[int]) -> bool:
    """True when ``lower`` (length n-1) sits between the beads of ``upper`` (length n)."""
    if len(lower) != len(upper) - 1:
        return False
    return all(upper[i] > lower[i] >= upper[i + 1] for i in range(len(lower)))


@dataclass(frozen=True)
class BeadArray:
    """Rows 1..N; ``rows[k-1]`` is thread k."""

    rows: tuple[tuple[int, ...], ...]

    def __init__(self, rows: Sequence[Sequence[int]], validate: bool = True):
        rows = tuple(tuple(int(v) for v in r) for r in rows)
        object.__setattr__(self, "rows", rows)
        if validate:
            self.validate()

    @property
    def N(self) -> int:
        return len(self.rows)

    def row(self, k: int) -> tuple[int, ...]:
        return self.rows[k - 1]

    @property
    def top(self) -> tuple[int, ...]:
        return self.rows[-1]

    def validate(self) -> None:
        for k, r in enumerate(self.rows, start=1):
            if len(r) != k:
                raise ValueError(f"row {k} has {len(r)} beads")
            if any(r[i] <= r[i + 1] for i in range(k - 1)):
                raise ValueError(f"row {k} is not strictly decreasing: {r}")
        for k in range(1, self.N):
            if not interlaces(self.rows[k], self.rows[k - 1]):
                raise ValueError(f"rows {k} and {k + 1} do not interlace")

    def flat(self) -> list[int]:
        return [v for r in self.rows for v in r]

    @classmethod
    def from_flat(cls, values: Sequence[int], N: int) -> "BeadArray":
        rows = []
        pos = 0
        for k in range(1, N + 1):
            rows.append(values[pos:pos + k])
            pos += k
        if pos != len(values):
            raise ValueError(f"{len(values)} values do not fill a rank-{N} array")
        return cls(rows)

    def to_json(self) -> dict:
        return {"N": self.N, "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, payload: dict) -> "BeadArray":
        return cls(payload["rows"])


def count_patterns(spec: SawtoothSpec) -> int:
    """Number of bead arrays with the given top row (Weyl dimension formula)."""
    num = vandermonde(list(spec.top))
    den = superfactorial(spec.N)
    q, rem = divmod(num, den)
    if rem:
        raise ArithmeticError("non-integral pattern count")
    return q


def child_rows(x: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All rows interlacing below ``x``."""
    ranges = [range(x[i + 1], x[i]) for i in range(len(x) - 1)]
    if not ranges:
        yield ()
        return
    yield from _product(ranges)


def _product(ranges):
    if len(ranges) == 1:
        for v in ranges[0]:
            yield (v,)
        return
    for v in ranges[0]:
        for rest in _product(ranges[1:]):
            yield (v,) + rest


def enumerate_patterns(spec: SawtoothSpec, limit: int = ENUMERATION_LIMIT) -> list[BeadArray]:
    total = count_patterns(spec)
    if total > limit:
        raise EnumerationLimitError(f"{total} patterns exceed the enumeration limit {limit}")
    out: list[BeadArray] = []

    def rec(rows_desc: list[tuple[int, ...]]) -> None:
        last = rows_desc[-1]
        if len(last) == 1:
            out.append(BeadArray(list(reversed(rows_desc)), validate=False))
            return
        for y in child_rows(last):
            rows_desc.append(y)
            rec(rows_desc)
            rows_desc.pop()

    rec([spec.top])
    return out


def row_distribution(spec: SawtoothSpec, k: int, limit: int = ENUMERATION_LIMIT) -> Counter:
    """Multiplicity of each row-k configuration over all patterns.

    Counted by descending from the top with multiplicities, then weighting
    by the number of completions below (its own pattern count).
    """
    if count_patterns(spec) > limit:
        raise EnumerationLimitError(f"pattern count exceeds the enumeration limit {limit}")
    level = Counter({spec.top: 1})
    for _ in range(spec.N - k):
        nxt: Counter = Counter()
        for x, mult in level.items():
            for y in child_rows(x):
                nxt[y] += mult
        level = nxt
    return Counter({y: mult * count_patterns(SawtoothSpec(y)) for y, mult in level.items()})


@dataclass(frozen=True)
class MomentEstimate:
    psi1: float
    psi2: float

    def __post_init__(self):
        if self.psi2 < self.psi1**2 - 1e-15:
            raise ValueError(f"psi2={self.psi2} < psi1^2={self.psi1 ** 2}")

    @property
    def variance(self) -> float:
        return self.psi2 - self.psi1**2

    @classmethod
    def from_spec(cls, spec: SawtoothSpec, exact: bool = False) -> "MomentEstimate":
        """Moments of the measure placing mass 1/N at each top[i]/N."""
        N = spec.N
        if exact:
            p1 = sum(Fraction(b, N) for b in spec.top) / N
            p2 = sum(Fraction(b, N) ** 2 for b in spec.top) / N
            return cls(p1, p2)
        p1 = sum(b / N for b in spec.top) / N
        p2 = sum((b / N) ** 2 for b in spec.top) / N
        return cls(p1, p2)


UNIFORM_MEAN = 0.5
UNIFORM_VARIANCE = 1.0 / 12.0


def rescale_normalizer(m: MomentEstimate, sqrt: bool = True) -> float:
    """sqrt(psi2 - psi1^2 - 1/12), or the bare difference when sqrt=False."""
    s = float(m.psi2) - float(m.psi1) ** 2 - UNIFORM_VARIANCE
    if s <= 0:
        raise ValueError(f"psi2 - psi1^2 - 1/12 = {s} must be positive")
    return math.sqrt(s) if sqrt else s


def rescale_thread(row: Sequence[int], N: int, m: MomentEstimate, sqrt: bool = True) -> list[float]:
    """Center by (psi1 - 1/2) sqrt(N) after dividing by sqrt(N), then divide by the normalizer.

    The default divides by the square root of psi2 - psi1^2 - 1/12, which
    is what matches the GUE normalization log E exp(Tr A X) = Tr(A^2)/2.
    ``sqrt=False`` gives the alternative reading without the root.
    """
    s = rescale_normalizer(m, sqrt)
    rn = math.sqrt(N)
    shift = (float(m.psi1) - UNIFORM_MEAN) * rn
    return [(b / rn - shift) / s for b in row]


def bottom_bead_distribution(top: Sequence[int]) -> dict[int, Fraction]:
    """Exact law of the single bead on thread 1 under the uniform measure.

    P(v) = (N-1)! sum_i C(x_i - v - 1, N - 2) / prod_{j != i} (x_i - x_j),
    obtained by expanding the Laplace transform of the bottom bead
    (a / (e^a - 1))^(N-1) times the orbital transform at (a, 0, ..., 0).
    """
    x = tuple(int(v) for v in top)
    SawtoothSpec(x)
    N = len(x)
    if N == 1:
        return {x[0]: Fraction(1)}
    denom = [math.prod(xi - xj for j, xj in enumerate(x) if j != i) for i, xi in enumerate(x)]
    out = {}
    for v in range(x[-1], x[0]):
        s = sum((Fraction(math.comb(xi - v - 1, N - 2), denom[i])
                 for i, xi in enumerate(x) if xi - v - 1 >= N - 2), Fraction(0))
        if s:
            out[v] = math.factorial(N - 1) * s
    return out
