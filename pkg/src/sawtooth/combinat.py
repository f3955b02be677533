"""Partitions, permutations, power sums and noncrossing set partitions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Iterable, Sequence


@dataclass(frozen=True, order=False)
class Partition:
    """Integer partition stored as a weakly decreasing tuple of positive parts."""

    parts: tuple[int, ...]

    def __init__(self, parts: Iterable[int]):
        parts = tuple(int(p) for p in parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def d(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self) -> str:
        return "+".join(str(p) for p in self.parts)

    def __repr__(self) -> str:
        return f"Partition({list(self.parts)})"

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Inverse of ``str``: ``"3+1+1"`` -> Partition([3, 1, 1])."""
        return cls(int(t) for t in text.split("+"))

    def to_json(self) -> list[int]:
        return list(self.parts)


def partitions_of(d: int) -> list[Partition]:
    """All partitions of ``d`` in reverse lexicographic order, e.g. 3, 2+1, 1+1+1."""
    if not isinstance(d, int) or not 1 <= d <= 12:
        raise ValueError(f"d must be an integer in [1, 12], got {d!r}")
    out: list[Partition] = []

    def rec(remaining: int, cap: int, acc: list[int]) -> None:
        if remaining == 0:
            out.append(Partition(acc))
            return
        for p in range(min(remaining, cap), 0, -1):
            acc.append(p)
            rec(remaining - p, p, acc)
            acc.pop()

    rec(d, d, [])
    return out


@dataclass(frozen=True)
class Permutation:
    """Bijection of {1..d}; ``images[i-1]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    @property
    def d(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, d: int) -> "Permutation":
        return cls(range(1, d + 1))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * (self.d + 1)
        out = []
        for start in range(1, self.d + 1):
            if seen[start]:
                continue
            cyc = []
            i = start
            while not seen[i]:
                seen[i] = True
                cyc.append(i)
                i = self.images[i - 1]
            out.append(tuple(cyc))
        return out


def cycle_type(p: Permutation) -> Partition:
    return Partition(sorted((len(c) for c in p.cycles()), reverse=True))


def cycle_type_of_images(images: Sequence[int]) -> tuple[int, ...]:
    """Cycle type of a 0-indexed image tuple; hot-path helper for walk enumeration."""
    n = len(images)
    seen = [False] * n
    lengths = []
    for s in range(n):
        if seen[s]:
            continue
        k = 0
        i = s
        while not seen[i]:
            seen[i] = True
            i = images[i]
            k += 1
        lengths.append(k)
    lengths.sort(reverse=True)
    return tuple(lengths)


def power_sum(beta: Partition, x: Sequence, exact: bool = False):
    """p_beta(x) = prod_i sum_j x_j ** beta_i.

    With ``exact=True`` the entries are converted to ``Fraction`` first, so
    float inputs are taken at their exact binary value.
    """
    if len(x) == 0:
        raise ValueError("power_sum needs a nonempty point")
    if exact:
        x = [Fraction(v) for v in x]
    return prod((sum(v**m for v in x) for m in beta.parts), start=Fraction(1) if exact else 1)


@dataclass(frozen=True)
class NoncrossingPartition:
    """Set partition of {1..d}; blocks are sorted tuples, ordered by minimum."""

    blocks: tuple[tuple[int, ...], ...]

    @property
    def d(self) -> int:
        return sum(len(b) for b in self.blocks)

    def block_sizes(self) -> list[int]:
        return [len(b) for b in self.blocks]


def is_noncrossing(blocks: Sequence[Sequence[int]]) -> bool:
    """No a < b < c < e with a, c in one block and b, e in another."""
    owner = {}
    for idx, blk in enumerate(blocks):
        for v in blk:
            owner[v] = idx
    pts = sorted(owner)
    for i, a in enumerate(pts):
        for j in range(i + 1, len(pts)):
            b = pts[j]
            if owner[b] == owner[a]:
                continue
            for k in range(j + 1, len(pts)):
                c = pts[k]
                if owner[c] != owner[a]:
                    continue
                for e in pts[k + 1:]:
                    if owner[e] == owner[b]:
                        return False
    return True


def set_partitions(d: int) -> list[tuple[tuple[int, ...], ...]]:
    """All set partitions of {1..d} (restricted growth strings)."""
    out = []

    def rec(i: int, blocks: list[list[int]]) -> None:
        if i > d:
            out.append(tuple(tuple(b) for b in blocks))
            return
        for b in blocks:
            b.append(i)
            rec(i + 1, blocks)
            b.pop()
        blocks.append([i])
        rec(i + 1, blocks)
        blocks.pop()

    rec(1, [])
    return out


def noncrossing_partitions(d: int) -> list[NoncrossingPartition]:
    """All noncrossing partitions of {1..d}.

    Built recursively: the block containing 1 is {1 = j_0 < j_1 < ... < j_m}
    and every gap between consecutive elements (and after the last one) is an
    independent noncrossing partition of that interval.
    """
    if not isinstance(d, int) or not 1 <= d <= 10:
        raise ValueError(f"d must be an integer in [1, 10], got {d!r}")

    def rec(lo: int, hi: int) -> list[list[tuple[int, ...]]]:
        # noncrossing partitions of the integer interval [lo, hi]
        if lo > hi:
            return [[]]
        results = []
        rest = list(range(lo + 1, hi + 1))
        n = len(rest)
        for mask in range(1 << n):
            block = [lo] + [rest[i] for i in range(n) if mask >> i & 1]
            bounds = block + [hi + 1]
            pieces = [rec(bounds[t] + 1, bounds[t + 1] - 1) for t in range(len(block))]
            combos = [[tuple(block)]]
            for options in pieces:
                combos = [c + o for c in combos for o in options]
            results.extend(combos)
        return results

    out = []
    for blocks in rec(1, d):
        out.append(NoncrossingPartition(tuple(sorted(blocks))))
    return out
