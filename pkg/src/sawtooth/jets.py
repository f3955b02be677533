"""Truncated univariate power series (order-D jets) over Fraction or float."""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Sequence

FLOAT_ZERO_TOL = 1e-12


class SingularityError(ZeroDivisionError):
    pass


class SeriesDomainError(ValueError):
    pass


def _is_zero(c, exact: bool, scale: float) -> bool:
    if exact:
        return c == 0
    return abs(c) <= FLOAT_ZERO_TOL * scale


class TruncatedSeries:
    """c_0 + c_1 z + ... + c_D z^D, known modulo z^(D+1).

    ``exact`` selects Fraction coefficients; otherwise coefficients are
    floats (or anything float-like, e.g. mpmath numbers).
    """

    __slots__ = ("coeffs", "exact")

    def __init__(self, coeffs: Sequence, exact: bool = True):
        if len(coeffs) == 0:
            raise ValueError("a jet needs at least one coefficient")
        conv = Fraction if exact else (lambda c: c if not isinstance(c, (int, Fraction)) else float(c))
        self.coeffs = tuple(conv(c) for c in coeffs)
        self.exact = exact

    # -- constructors -------------------------------------------------------
    @classmethod
    def constant(cls, c, order: int, exact: bool = True) -> "TruncatedSeries":
        return cls([c] + [0] * order, exact)

    @classmethod
    def variable(cls, order: int, exact: bool = True) -> "TruncatedSeries":
        coeffs = [0] * (order + 1)
        if order >= 1:
            coeffs[1] = 1
        return cls(coeffs, exact)

    @classmethod
    def exp_linear(cls, c, order: int, exact: bool = True) -> "TruncatedSeries":
        """Jet of exp(c z)."""
        if exact:
            c = Fraction(c)
            return cls([c**m / factorial(m) for m in range(order + 1)], True)
        return cls([c**m / factorial(m) for m in range(order + 1)], False)

    # -- basic protocol -----------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, m: int):
        return self.coeffs[m]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __repr__(self) -> str:
        mode = "exact" if self.exact else "float"
        return f"TruncatedSeries({list(self.coeffs)}, {mode})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.exact == other.exact and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.exact))

    def _check(self, other: "TruncatedSeries") -> None:
        if self.order != other.order or self.exact != other.exact:
            raise ValueError(
                f"incompatible jets: order {self.order}/{other.order}, exact {self.exact}/{other.exact}"
            )

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return other
        return TruncatedSeries.constant(other, self.order, self.exact)

    def _new(self, coeffs) -> "TruncatedSeries":
        out = object.__new__(TruncatedSeries)
        out.coeffs = tuple(coeffs)
        out.exact = self.exact
        return out

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        return self._new(a + b for a, b in zip(self.coeffs, o.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return self._new(-a for a in self.coeffs)

    def __sub__(self, other):
        o = self._coerce(other)
        return self._new(a - b for a, b in zip(self.coeffs, o.coeffs))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "TruncatedSeries":
        if self.exact:
            c = Fraction(c)
        return self._new(c * a for a in self.coeffs)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        self._check(other)
        a, b = self.coeffs, other.coeffs
        n = len(a)
        out = []
        for m in range(n):
            acc = a[0] * b[m]
            for i in range(1, m + 1):
                acc += a[i] * b[m - i]
            out.append(acc)
        return self._new(out)

    __rmul__ = __mul__

    def _scale_max(self) -> float:
        return max((abs(c) for c in self.coeffs), default=0.0) or 1.0

    def reciprocal(self) -> "TruncatedSeries":
        c0 = self.coeffs[0]
        if _is_zero(c0, self.exact, self._scale_max()):
            raise SingularityError("division by a series with zero constant term; use shift() first")
        a = self.coeffs
        inv = [1 / c0 if not self.exact else Fraction(1) / c0]
        for m in range(1, len(a)):
            acc = a[1] * inv[m - 1]
            for i in range(2, m + 1):
                acc += a[i] * inv[m - i]
            inv.append(-acc * inv[0])
        return self._new(inv)

    def __truediv__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self.scale(Fraction(1) / Fraction(other) if self.exact else 1 / other)
        self._check(other)
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient (float mode uses the relative tolerance)."""
        scale = self._scale_max()
        for m, c in enumerate(self.coeffs):
            if not _is_zero(c, self.exact, scale):
                return m
        return None

    def shift(self, m: int) -> "TruncatedSeries":
        """Divide by z^m after checking the first m coefficients vanish.

        The result is known to order D - m.
        """
        if m > self.order:
            raise ValueError(f"cannot shift an order-{self.order} jet by {m}")
        scale = self._scale_max()
        bad = [i for i in range(m) if not _is_zero(self.coeffs[i], self.exact, scale)]
        if bad:
            raise SingularityError(f"coefficients {bad} do not vanish; cannot divide by z^{m}")
        return self._new(self.coeffs[m:])

    def truncate(self, order: int) -> "TruncatedSeries":
        return self._new(self.coeffs[: order + 1])

    def derivative(self) -> list:
        return [m * c for m, c in enumerate(self.coeffs)][1:]

    def to_float(self) -> "TruncatedSeries":
        return TruncatedSeries([float(c) for c in self.coeffs], exact=False)


def series_exp(s: TruncatedSeries) -> TruncatedSeries:
    """exp of a jet with zero constant term, via e' = s' e."""
    if not _is_zero(s.coeffs[0], s.exact, s._scale_max()):
        raise SeriesDomainError("series_exp needs s(0) = 0")
    a = s.coeffs
    one = Fraction(1) if s.exact else 1.0
    e = [one]
    for m in range(1, len(a)):
        acc = 0 * one
        for k in range(1, m + 1):
            acc += k * a[k] * e[m - k]
        e.append(acc / m)
    return s._new(e)


def series_log(s: TruncatedSeries) -> TruncatedSeries:
    """log of a jet with constant term 1, via l' = s' / s."""
    c0 = s.coeffs[0]
    if (s.exact and c0 != 1) or (not s.exact and abs(c0 - 1) > FLOAT_ZERO_TOL):
        raise SeriesDomainError(f"series_log needs s(0) = 1, got {c0}")
    a = s.coeffs
    zero = Fraction(0) if s.exact else 0.0
    # m l_m = m a_m - sum_{k=1}^{m-1} k l_k a_{m-k}
    out = [zero]
    for m in range(1, len(a)):
        acc = m * a[m]
        for k in range(1, m):
            acc -= k * out[k] * a[m - k]
        out.append(acc / m)
    return s._new(out)


# -- determinants -------------------------------------------------------------

def _poly_trim(p: list) -> list:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a: list, b: list) -> list:
    out = [0 * a[0]] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    a = a + [0 * a[0]] * (n - len(a))
    b = b + [0 * b[0]] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _valuation(p: list, exact: bool) -> int | None:
    scale = max((abs(c) for c in p), default=0) or 1
    for i, c in enumerate(p):
        if not _is_zero(c, exact, scale):
            return i
    return None


def _poly_exact_div(num: list, den: list, exact: bool) -> list:
    """Quotient of polynomials known to divide exactly, computed from the low end."""
    v = _valuation(den, exact)
    if v is None:
        raise SingularityError("division by the zero polynomial")
    den = _poly_trim(list(den[v:]))
    vn = _valuation(num, exact)
    if vn is None:
        return [0 * num[0]]
    if vn < v:
        raise SingularityError("inexact polynomial division (valuation)")
    num = list(num[v:])
    qlen = len(_poly_trim(list(num))) - len(den) + 1
    if qlen <= 0:
        return [0 * num[0]]
    inv0 = Fraction(1) / den[0] if exact else 1 / den[0]
    q = []
    rem = list(num)
    for m in range(qlen):
        c = rem[m] * inv0
        q.append(c)
        if c != 0:
            for j in range(1, min(len(den), len(rem) - m)):
                rem[m + j] -= c * den[j]
    return q


def series_det(matrix: Sequence[Sequence[TruncatedSeries]]) -> TruncatedSeries:
    """Determinant of a square matrix of jets, to the jets' common order.

    Each jet is treated as an exact polynomial; the determinant of the
    truncated entries agrees with the true determinant modulo z^(D+1).
    Fraction-free Bareiss elimination keeps every intermediate a polynomial
    (the divisions are exact).  Pivot rows are chosen by lowest valuation,
    then largest leading coefficient, which is what keeps float mode stable.
    """
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    if any(len(row) != n for row in matrix):
        raise ValueError("series_det needs a square matrix")
    first = matrix[0][0]
    order, exact = first.order, first.exact
    for row in matrix:
        for e in row:
            first._check(e)
    one = Fraction(1) if exact else 1.0
    M = [[_poly_trim(list(e.coeffs)) for e in row] for row in matrix]
    sign = 1
    prev = [one]
    for k in range(n - 1):
        best = None
        for i in range(k, n):
            v = _valuation(M[i][k], exact)
            if v is None:
                continue
            cand = (v, -abs(M[i][k][v]))
            if best is None or cand < best[0]:
                best = (cand, i)
        if best is None:
            return TruncatedSeries.constant(0, order, exact)
        p = best[1]
        if p != k:
            M[k], M[p] = M[p], M[k]
            sign = -sign
        piv = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = _poly_sub(_poly_mul(piv, M[i][j]), _poly_mul(M[i][k], M[k][j]))
                M[i][j] = _poly_trim(_poly_exact_div(num, prev, exact))
            M[i][k] = [0 * one]
        prev = piv
    det = M[n - 1][n - 1]
    coeffs = (list(det) + [0 * one] * (order + 1))[: order + 1]
    if sign < 0:
        coeffs = [-c for c in coeffs]
    return TruncatedSeries(coeffs, exact)


def series_det_cofactor(matrix: Sequence[Sequence[TruncatedSeries]]) -> TruncatedSeries:
    """Laplace expansion along the first row; independent check for small n."""
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    total = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = matrix[0][j] * series_det_cofactor(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total
