"""Monotone and classical double Hurwitz numbers by direct walk enumeration.

A walk starts at a permutation of cycle type alpha and multiplies on the right
by transpositions (s t), s < t.  The edge label of (s t) is t.  A walk is
monotone when its labels weakly increase and transitive when the start
permutation together with the steps generates a transitive subgroup.
"""

from __future__ import annotations

import itertools
import json
import threading
from dataclasses import dataclass
from pathlib import Path

from .combinat import Partition, cycle_type_of_images

DEFAULT_BUDGET = 10**8


class BudgetExceededError(RuntimeError):
    """Raised when an enumeration would perform more walk extensions than allowed."""

    def __init__(self, bound: int, what: str = "walk extensions"):
        super().__init__(f"enumeration budget exceeded: more than {bound} {what}")
        self.bound = bound


@dataclass(frozen=True)
class WalkQuery:
    d: int
    r: int
    alpha: Partition
    beta: Partition
    monotone: bool = True

    def __post_init__(self):
        if self.alpha.d != self.d or self.beta.d != self.d:
            raise ValueError(f"alpha={self.alpha}, beta={self.beta} must both be partitions of {self.d}")
        if self.r < 0:
            raise ValueError(f"step count must be nonnegative, got {self.r}")

    def key(self) -> str:
        return f"{self.d}/{self.r}/{self.alpha}/{self.beta}/{int(self.monotone)}"

    @classmethod
    def from_key(cls, key: str) -> "WalkQuery":
        d, r, a, b, m = key.split("/")
        return cls(int(d), int(r), Partition.parse(a), Partition.parse(b), bool(int(m)))


def permutations_of_type(alpha: Partition) -> list[tuple[int, ...]]:
    """All 0-indexed image tuples in S(d) with cycle type alpha."""
    target = alpha.parts
    return [p for p in itertools.permutations(range(alpha.d)) if cycle_type_of_images(p) == target]


def _components(images: tuple[int, ...]) -> tuple[int, ...]:
    """Canonical component labels of the cycles of a permutation."""
    n = len(images)
    lab = [-1] * n
    nxt = 0
    for s in range(n):
        if lab[s] >= 0:
            continue
        i = s
        while lab[i] < 0:
            lab[i] = nxt
            i = images[i]
        nxt += 1
    return tuple(lab)


def _merge(labels: tuple[int, ...], s: int, t: int) -> tuple[int, ...]:
    a, b = labels[s], labels[t]
    if a == b:
        return labels
    lo, hi = min(a, b), max(a, b)
    merged = [lo if x == hi else x for x in labels]
    # relabel to first-occurrence order so equal partitions compare equal
    remap: dict[int, int] = {}
    return tuple(remap.setdefault(x, len(remap)) for x in merged)


class _Counter:
    """Memoized depth-first extension of walks.

    State is (current permutation, component labelling, last label, steps
    left).  The component labelling is the union-find over the start
    permutation's cycles and the steps so far.  The end point is a product of
    the start and the steps, so it lies in the group they generate and adding
    it to the generators never changes the orbits; start + steps suffice.
    """

    def __init__(self, beta: Partition, monotone: bool, budget: int):
        self.target = beta.parts
        self.target_len = len(beta.parts)
        self.monotone = monotone
        self.budget = budget
        self.ops = 0
        self.memo: dict = {}

    def count(self, images: tuple[int, ...], labels: tuple[int, ...], last: int, left: int) -> int:
        key = (images, labels, last, left)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        ncomp = max(labels) + 1
        ncyc = len(cycle_type_of_images(images))
        if left == 0:
            ok = ncomp == 1 and cycle_type_of_images(images) == self.target
            self.memo[key] = int(ok)
            return int(ok)
        # each step changes the cycle count by one and merges at most two components
        gap = abs(ncyc - self.target_len)
        if ncomp - 1 > left or gap > left or (left - gap) % 2:
            self.memo[key] = 0
            return 0
        d = len(images)
        total = 0
        t_lo = last if self.monotone else 1
        for t in range(max(t_lo, 1), d):
            for s in range(t):
                self.ops += 1
                if self.ops > self.budget:
                    raise BudgetExceededError(self.budget)
                nxt = list(images)
                nxt[s], nxt[t] = nxt[t], nxt[s]
                total += self.count(tuple(nxt), _merge(labels, s, t), t, left - 1)
        self.memo[key] = total
        return total


def count_walks(q: WalkQuery, budget: int = DEFAULT_BUDGET) -> int:
    """Number of r-step transitive walks from cycle type alpha to cycle type beta.

    Labels are 0-indexed internally: transposition (s t) with s < t carries
    label t, which is the 1-indexed larger element minus one; monotonicity is
    unaffected by the shift.
    """
    counter = _Counter(q.beta, q.monotone, budget)
    total = 0
    for start in permutations_of_type(q.alpha):
        total += counter.count(start, _components(start), 0, q.r)
    return total


def count_walks_bruteforce(q: WalkQuery, include_endpoints: bool = True) -> int:
    """Unmemoized oracle: enumerate every step sequence explicitly.

    Transitivity is decided by the orbits of the group generated by the start,
    every step and (optionally) the end permutation.
    """
    d = q.d
    transpositions = [(s, t) for t in range(d) for s in range(t)]
    total = 0
    for start in permutations_of_type(q.alpha):
        for steps in itertools.product(transpositions, repeat=q.r):
            if q.monotone and any(steps[i][1] > steps[i + 1][1] for i in range(q.r - 1)):
                continue
            cur = list(start)
            for s, t in steps:
                cur[s], cur[t] = cur[t], cur[s]
            if cycle_type_of_images(cur) != q.beta.parts:
                continue
            gens = [start] + [_transposition(d, s, t) for s, t in steps]
            if include_endpoints:
                gens.append(tuple(cur))
            if _is_transitive(d, gens):
                total += 1
    return total


def _transposition(d: int, s: int, t: int) -> tuple[int, ...]:
    img = list(range(d))
    img[s], img[t] = t, s
    return tuple(img)


def _is_transitive(d: int, gens) -> bool:
    orbit = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = g[x]
            if y not in orbit:
                orbit.add(y)
                frontier.append(y)
    return len(orbit) == d


def genus(r: int, alpha: Partition, beta: Partition) -> int | None:
    """Riemann-Hurwitz genus (r + 2 - l(alpha) - l(beta)) / 2, or None if not a nonnegative integer."""
    if alpha.d != beta.d:
        raise ValueError(f"alpha={alpha} and beta={beta} have different sizes")
    twice = r + 2 - alpha.length - beta.length
    if twice < 0 or twice % 2:
        return None
    return twice // 2


def steps_for_genus(g: int, alpha: Partition, beta: Partition) -> int:
    r = 2 * g - 2 + alpha.length + beta.length
    if g < 0 or r < 0:
        raise ValueError(f"genus {g} with alpha={alpha}, beta={beta} implies negative step count {r}")
    return r


class HurwitzTable:
    """Cache of exact walk counts keyed by WalkQuery.

    Reads may happen from any thread; writes go through a lock (single writer).
    The JSON file maps "d/r/alpha/beta/monotone" to decimal integer strings.
    """

    def __init__(self, d_max: int = 7, r_max: int = 40, path: str | Path | None = None,
                 budget: int = DEFAULT_BUDGET):
        self.d_max = d_max
        self.r_max = r_max
        self.budget = budget
        self.path = Path(path) if path else None
        self._data: dict[WalkQuery, int] = {}
        self._lock = threading.Lock()
        if self.path and self.path.exists():
            self.load(self.path)

    def __len__(self) -> int:
        return len(self._data)

    def items(self):
        return list(self._data.items())

    def _check_bounds(self, q: WalkQuery) -> None:
        if q.d > self.d_max or q.r > self.r_max:
            raise BudgetExceededError(self.d_max if q.d > self.d_max else self.r_max,
                                      "degree" if q.d > self.d_max else "steps")

    def get(self, q: WalkQuery) -> int:
        self._check_bounds(q)
        hit = self._data.get(q)
        if hit is not None:
            return hit
        value = count_walks(q, self.budget)
        with self._lock:
            self._data[q] = value
        return value

    def monotone(self, r: int, alpha: Partition, beta: Partition) -> int:
        return self.get(WalkQuery(alpha.d, r, alpha, beta, True))

    def classical(self, r: int, alpha: Partition, beta: Partition) -> int:
        return self.get(WalkQuery(alpha.d, r, alpha, beta, False))

    def monotone_by_genus(self, g: int, alpha: Partition, beta: Partition) -> int:
        return self.monotone(steps_for_genus(g, alpha, beta), alpha, beta)

    def to_json(self) -> dict[str, str]:
        return {q.key(): str(v) for q, v in sorted(self._data.items(), key=lambda kv: kv[0].key())}

    def save(self, path: str | Path | None = None) -> None:
        target = Path(path) if path else self.path
        if target is None:
            raise ValueError("no cache path configured")
        with self._lock:
            payload = self.to_json()
        target.write_text(json.dumps(payload, indent=1, sort_keys=True))

    def load(self, path: str | Path) -> None:
        raw = json.loads(Path(path).read_text())
        with self._lock:
            for key, value in raw.items():
                q = WalkQuery.from_key(key)
                if q.d <= self.d_max and q.r <= self.r_max:
                    self._data[q] = int(value)


_default_table = HurwitzTable()


def default_table() -> HurwitzTable:
    return _default_table


def monotone_by_genus(g: int, alpha: Partition, beta: Partition, table: HurwitzTable | None = None) -> int:
    """Monotone double Hurwitz number of genus g, i.e. count_walks at r = 2g - 2 + l(alpha) + l(beta)."""
    return (table or _default_table).monotone_by_genus(g, alpha, beta)
