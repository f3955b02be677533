"""Exact uniform sampling of bead arrays, row by row from the top.

Given row x (length n), the row below is y (length m = n - 1) with y_i in
the disjoint ranges [x_{i+1}, x_i - 1], and P(y | x) is proportional to the
number of arrays below y, i.e. to the Vandermonde V(y).  Rows are drawn one
coordinate at a time, largest first.

Summing V over the not-yet-drawn coordinates telescopes: with l_j the
Lagrange basis polynomials on the nodes x, and E_j(u) = l_j(u+1) - l_j(u),
the unnormalized law of y_i given y_1..y_{i-1} is

    det[ E_j(u_l) ]_{l, j <= i},   u = (y_1, .., y_{i-1}, candidate).

Only the last row changes between candidates, so in exact arithmetic each
coordinate costs one bordered (Schur complement) update of the inverse of
the leading block.  Column j may be scaled by any constant; exact mode uses
the integer polynomials prod_{k != j}(u - x_k) in place of l_j.  Floating
point uses a different, well-conditioned factorization (see
RowConditional._float_setup).
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .patterns import BeadArray, SawtoothSpec, child_rows, count_patterns, interlaces
from ..linalg import det_int

EXACT_MAX_N = 40
EXACT_METHOD_MAX_N = 120
GLAUBER_MAX_N = 500


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Counter-based generator; (seed, stream) pairs give independent reproducible streams."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), int(stream)])))


def _exact_row_vector(u: int, x: Sequence[int]) -> list[int]:
    """prod_{k != j}(u + 1 - x_k) - prod_{k != j}(u - x_k) for j < len(x) - 1."""
    m = len(x) - 1
    out = []
    for j in range(m):
        p0 = 1
        p1 = 1
        for k, xk in enumerate(x):
            if k != j:
                p0 *= u - xk
                p1 *= u + 1 - xk
        out.append(p1 - p0)
    return out


class RowConditional:
    """Law of the row below ``x``, exposed as a sequential sampler.

    ``conditional(prefix)`` returns the exact law of the next coordinate as
    a dict of Fractions; ``pmf()`` multiplies these out over all rows
    (small rows only); ``sample(rng)`` draws a row.
    """

    def __init__(self, x: Sequence[int], arithmetic: str = "exact"):
        self.x = tuple(int(v) for v in x)
        if len(self.x) < 2:
            raise ValueError("a row below needs a parent with at least two beads")
        if any(self.x[i] <= self.x[i + 1] for i in range(len(self.x) - 1)):
            raise ValueError(f"parent row must be strictly decreasing: {self.x}")
        if arithmetic not in ("exact", "float"):
            raise ValueError(f"arithmetic must be 'exact' or 'float', got {arithmetic!r}")
        self.arithmetic = arithmetic
        self.m = len(self.x) - 1
        if arithmetic == "float":
            self._float_setup()

    def candidates(self, i: int) -> range:
        return range(self.x[i + 1], self.x[i])

    # -- exact ----------------------------------------------------------------
    def _exact_weights(self, prefix: Sequence[int]) -> dict[int, Fraction]:
        i = len(prefix)
        rows = [_exact_row_vector(y, self.x) for y in prefix]
        G = [r[:i] for r in rows]
        c = [r[i] for r in rows]
        out = {}
        for v in self.candidates(i):
            e = _exact_row_vector(v, self.x)
            out[v] = det_int([G[l] + [c[l]] for l in range(i)] + [e[: i + 1]])
        return out

    def conditional(self, prefix: Sequence[int] = ()) -> dict[int, Fraction]:
        """Exact law of coordinate len(prefix) given the earlier coordinates."""
        w = self._exact_weights(prefix)
        total = sum(w.values())
        if total == 0:
            raise ValueError(f"prefix {tuple(prefix)} has probability zero")
        return {v: Fraction(wv, total) for v, wv in w.items()}

    def pmf(self) -> dict[tuple[int, ...], Fraction]:
        out = {(): Fraction(1)}
        for _ in range(self.m):
            nxt = {}
            for prefix, p in out.items():
                for v, q in self.conditional(prefix).items():
                    if q:
                        nxt[prefix + (v,)] = p * q
            out = nxt
        return out

    def sample(self, rng: np.random.Generator) -> tuple[int, ...]:
        if self.arithmetic == "exact":
            return self._sample_exact(rng)
        return self._sample_float(rng)

    def _sample_exact(self, rng: np.random.Generator) -> tuple[int, ...]:
        py = random.Random(int(rng.integers(2**63)))
        Ginv: list[list[Fraction]] = []
        fixed: list[list[int]] = []
        out = []
        for i in range(self.m):
            cands = list(self.candidates(i))
            rows = [_exact_row_vector(v, self.x) for v in cands]
            c = [r[i] for r in fixed]
            wv = [sum((Ginv[a][b] * c[b] for b in range(i)), Fraction(0)) for a in range(i)]
            sig = [r[i] - sum((r[j] * wv[j] for j in range(i)), Fraction(0)) for r in rows]
            if len(cands) == 1:
                idx = 0
            else:
                den = lcm(*(s.denominator for s in sig))
                ints = [abs(s.numerator * (den // s.denominator)) for s in sig]
                pick = py.randrange(sum(ints))
                idx = 0
                while pick >= ints[idx]:
                    pick -= ints[idx]
                    idx += 1
            s = sig[idx]
            r = rows[idx][:i]
            rG = [sum((r[a] * Ginv[a][b] for a in range(i)), Fraction(0)) for b in range(i)]
            new = [[Ginv[a][b] + wv[a] * rG[b] / s for b in range(i)] + [-wv[a] / s] for a in range(i)]
            new.append([-rG[b] / s for b in range(i)] + [1 / Fraction(s)])
            Ginv = new
            fixed.append(rows[idx])
            out.append(cands[idx])
        return tuple(out)

    # -- float ----------------------------------------------------------------
    # The prefix formulation above cancels catastrophically in floating point
    # once many coordinates are fixed.  The float path instead factors the
    # weight of candidate v for coordinate i as F(v) Z(v), where
    # F(v) = prod_{l<i} (y_l - v) carries the fixed coordinates and Z is the
    # polynomial of degree m-1-i with sum_{u in R_k} F(u) Z(u) = 0 on every
    # lower range R_k (k > i).  Z is expanded in the Lagrange basis on one
    # node per range (near its midpoint), which keeps the linear system
    # close to diagonal; everything is carried in log-magnitude / sign form.
    def _float_setup(self) -> None:
        x = self.x
        m = self.m
        self._base = x[m]
        U = np.arange(x[m], x[0], dtype=float)
        t = np.empty(m)
        for k in range(m):
            mid = (x[k + 1] + x[k] - 1) / 2
            t[k] = mid + 0.25 if mid == int(mid) else mid  # keep nodes off the integers
        A = U[:, None] - t[None, :]
        LA = np.log(np.abs(A))
        NEG = (A < 0).astype(np.int64)
        self._LA = LA
        self._NEG = NEG
        self._SLA = np.concatenate([np.cumsum(LA[:, ::-1], axis=1)[:, ::-1], np.zeros((len(U), 1))], axis=1)
        self._SNEG = np.concatenate([np.cumsum(NEG[:, ::-1], axis=1)[:, ::-1], np.zeros((len(U), 1), np.int64)], axis=1)
        DT = t[:, None] - t[None, :]
        np.fill_diagonal(DT, 1.0)
        LT = np.log(np.abs(DT))
        self._SLT = np.concatenate([np.cumsum(LT[:, ::-1], axis=1)[:, ::-1], np.zeros((m, 1))], axis=1)
        self._U = U

    def _float_law(self, i: int, logF: np.ndarray) -> np.ndarray:
        """Probabilities over candidates(i); logF holds log F(u) for u below x_i."""
        m, x, base = self.m, self.x, self._base
        lo_end = x[i + 1] - base
        hi = x[i] - base
        cols = np.arange(i, m)
        T = (self._SLA[:hi, i][:, None] - self._LA[:hi, i:] - self._SLT[i:, i][None, :]
             + logF[:hi, None])
        parity = (self._SNEG[:hi, i][:, None] - self._NEG[:hi, i:] + (cols - i)[None, :]) & 1
        sgn = 1.0 - 2.0 * parity
        rowmax = T.max(axis=1)
        if i == m - 1:
            a = np.ones(1)
        else:
            starts = np.array([x[k + 1] - base for k in range(m - 1, i, -1)])
            lengths = np.diff(np.append(starts, lo_end))
            scale = np.repeat(np.maximum.reduceat(rowmax[:lo_end], starts), lengths)
            W = sgn[:lo_end] * np.exp(T[:lo_end] - scale[:, None])
            M = np.add.reduceat(W, starts, axis=0)
            try:
                a = np.concatenate([[1.0], np.linalg.solve(M[:, 1:], -M[:, 0])])
            except np.linalg.LinAlgError as exc:
                raise FloatingPointError(f"singular range system at coordinate {i} of row {self.x}") from exc
        Z = (sgn[lo_end:] * np.exp(T[lo_end:] - rowmax[lo_end:, None])) @ a
        return _normalize_signed(Z, rowmax[lo_end:])

    def float_conditional(self, prefix: Sequence[int] = ()) -> dict[int, float]:
        """Float law of the next coordinate given ``prefix``."""
        if self.arithmetic != "float":
            self._float_setup()
        i = len(prefix)
        logF = np.zeros(len(self._U))
        lim = self.x[i] - self._base
        for yl in prefix:
            logF[:lim] += np.log(yl - self._U[:lim])
        p = self._float_law(i, logF)
        return dict(zip(self.candidates(i), p.tolist()))

    def _sample_float(self, rng: np.random.Generator, trace: list | None = None) -> tuple[int, ...]:
        unif = rng.random(self.m)
        if trace is None:
            from ._kernels import sample_row_float

            x = np.asarray(self.x, dtype=np.int64)
            out = sample_row_float(x, self._base, self._U, self._LA, self._NEG, self._SLA,
                                   self._SNEG, self._SLT, unif)
            return tuple(int(v) for v in out)
        # reference path: numpy, recording each coordinate's law
        logF = np.zeros(len(self._U))
        out = []
        for i in range(self.m):
            lo, hi = self.x[i + 1], self.x[i]
            p = self._float_law(i, logF)
            trace.append(p)
            idx = int(np.searchsorted(np.cumsum(p), unif[i] * p.sum(), side="right"))
            v = lo + min(idx, hi - lo - 1)
            out.append(v)
            lim = lo - self._base
            logF[:lim] += np.log(v - self._U[:lim])
        return tuple(out)


def _normalize_signed(sig: np.ndarray, logscale: np.ndarray) -> np.ndarray:
    """Probabilities from signed weights sig * exp(logscale); wrong-sign roundoff is zeroed."""
    with np.errstate(divide="ignore"):
        logw = np.log(np.abs(sig)) + logscale
    top = int(np.argmax(logw))
    sign = np.sign(sig[top])
    logw = np.where(np.sign(sig) == sign, logw, -np.inf)
    w = np.exp(logw - logw[top])
    return w / w.sum()


def conditional_row_distribution(x: Sequence[int], arithmetic: str = "exact") -> RowConditional:
    return RowConditional(x, arithmetic)


def _choose_arithmetic(N: int, arithmetic: str) -> str:
    if arithmetic == "auto":
        return "exact" if N <= EXACT_MAX_N else "float"
    return arithmetic


def sample_pattern(spec: SawtoothSpec, seed: int, method: str = "exact", glauber_steps: int | None = None,
                   arithmetic: str = "auto", stream: int = 0) -> BeadArray:
    """Draw a bead array with top row spec.top.

    method="exact" is exactly uniform (sequential conditional rows);
    method="glauber" runs single-bead +-1 Metropolis moves from the maximal
    pattern for ``glauber_steps`` proposals (default 10 N^3) and is only
    approximately uniform.
    """
    rng = make_rng(seed, stream)
    N = spec.N
    if method == "exact":
        if N > EXACT_METHOD_MAX_N:
            raise ValueError(f"exact sampling supports N <= {EXACT_METHOD_MAX_N}, got {N}")
        mode = _choose_arithmetic(N, arithmetic)
        rows = [spec.top]
        while len(rows[-1]) > 1:
            rows.append(RowConditional(rows[-1], mode).sample(rng))
        return BeadArray(list(reversed(rows)))
    if method == "glauber":
        if N > GLAUBER_MAX_N:
            raise ValueError(f"glauber sampling supports N <= {GLAUBER_MAX_N}, got {N}")
        steps = 10 * N**3 if glauber_steps is None else int(glauber_steps)
        if steps < 0:
            raise ValueError("glauber_steps must be nonnegative")
        return glauber(spec, steps, rng)
    raise ValueError(f"unknown method {method!r}")


def _sample_stream(args) -> BeadArray:
    spec, seed, method, glauber_steps, arithmetic, j = args
    return sample_pattern(spec, seed, method=method, glauber_steps=glauber_steps,
                          arithmetic=arithmetic, stream=j)


def sample_batch(spec: SawtoothSpec, count: int, seed: int, method: str = "exact",
                 glauber_steps: int | None = None, arithmetic: str = "auto", workers: int = 1):
    """Yield ``count`` independent samples; sample j uses stream j of ``seed``.

    With ``workers > 1`` replicates are drawn in a process pool; the output
    is identical to the serial run because every sample owns its stream.
    """
    jobs = ((spec, seed, method, glauber_steps, arithmetic, j) for j in range(count))
    if workers <= 1:
        yield from map(_sample_stream, jobs)
        return
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(_sample_stream, jobs, chunksize=max(1, min(64, count // (4 * workers))))


def maximal_pattern(spec: SawtoothSpec) -> BeadArray:
    rows = [list(spec.top)]
    while len(rows[-1]) > 1:
        x = rows[-1]
        rows.append([x[i] - 1 for i in range(len(x) - 1)])
    return BeadArray(list(reversed(rows)))


def glauber(spec: SawtoothSpec, steps: int, rng: np.random.Generator) -> BeadArray:
    rows = [list(r) for r in maximal_pattern(spec).rows]
    N = spec.N
    if N == 1 or steps == 0:
        return BeadArray(rows)
    chunk = 1 << 16
    done = 0
    while done < steps:
        n = min(chunk, steps - done)
        ks = rng.integers(1, N, size=n)  # movable rows 1..N-1
        us = rng.random(size=n)
        dirs = rng.integers(0, 2, size=n) * 2 - 1
        for k, u, dv in zip(ks.tolist(), us.tolist(), dirs.tolist()):
            row = rows[k - 1]
            i = int(u * k)
            v = row[i] + dv
            above = rows[k]
            if not (above[i] > v >= above[i + 1]):
                continue
            if k > 1:
                below = rows[k - 2]
                if i < k - 1 and not v > below[i]:
                    continue
                if i > 0 and not below[i - 1] >= v:
                    continue
            row[i] = v
        done += n
    return BeadArray(rows)


def enumeration_conditional(spec: SawtoothSpec, x: Sequence[int]) -> dict[tuple[int, ...], Fraction]:
    """P(row below = y | row = x) from brute-force counts of completions."""
    counts = {}
    for y in child_rows(x):
        counts[y] = count_patterns(SawtoothSpec(y)) if len(y) > 0 else 1
    total = sum(counts.values())
    return {y: Fraction(c, total) for y, c in counts.items()}


def check_interlacing(p: BeadArray) -> bool:
    return all(interlaces(p.rows[k], p.rows[k - 1]) for k in range(1, p.N))


def log_count(spec: SawtoothSpec) -> float:
    return math.log(count_patterns(spec))
