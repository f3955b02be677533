"""Bead arrays as lozenge tilings.

Coordinates are (u, v) in the 120-degree basis: the point u*(1, 0) +
v*(-1/2, sqrt(3)/2).  Horizontal strip k lies between v = k - 1 and v = k
and is a row of unit triangles, alternately pointing down and up.  A bead
at position c on thread k is a vertical lozenge whose lower half is the
down triangle c of strip k and whose upper half is the up triangle c of
strip k + 1.  Whatever is left in a strip is a union of runs of even
length, each covered in exactly one way by tilted lozenges.

Tile positions are centroids: a vertical tile at (c, k), a left-leaning
tile at (c, k - 1/2) and a right-leaning tile at (c + 1/2, k - 1/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .patterns import BeadArray

VERTICAL = "vertical"
LEFT = "left"
RIGHT = "right"
TILE_TYPES = (LEFT, RIGHT, VERTICAL)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Tile:
    type: str
    u: Fraction
    v: Fraction

    def vertices(self) -> list[tuple[Fraction, Fraction]]:
        """Corners in the 120-degree basis, counterclockwise."""
        if self.type == VERTICAL:
            c, k = self.u, self.v
            return [(c - HALF, k - 1), (c + HALF, k), (c + HALF, k + 1), (c - HALF, k)]
        k = self.v + HALF
        if self.type == LEFT:
            c = self.u
            return [(c - HALF, k - 1), (c + HALF, k - 1), (c + HALF, k), (c - HALF, k)]
        if self.type == RIGHT:
            c = self.u - HALF
            return [(c - HALF, k - 1), (c + HALF, k - 1), (c + 3 * HALF, k), (c + HALF, k)]
        raise ValueError(f"unknown tile type {self.type!r}")

    def cartesian(self) -> list[tuple[float, float]]:
        return [to_cartesian(u, v) for u, v in self.vertices()]

    def to_json(self) -> dict:
        return {"type": self.type, "u": _num(self.u), "v": _num(self.v)}


def _num(x: Fraction):
    return int(x) if x.denominator == 1 else float(x)


def to_cartesian(u, v) -> tuple[float, float]:
    return (float(u) - float(v) / 2, float(v) * math.sqrt(3) / 2)


def pattern_to_lozenges(p: BeadArray) -> list[Tile]:
    top = p.top
    L, R = min(top), max(top)
    tiles: list[Tile] = []
    for k in range(1, p.N + 1):
        for c in p.row(k):
            tiles.append(Tile(VERTICAL, Fraction(c), Fraction(k)))
        # triangle index 2c - 1 is the down triangle c, 2c the up triangle c
        taken = {2 * c - 1 for c in p.row(k)}
        if k > 1:
            taken |= {2 * c for c in p.row(k - 1)}
        free = [t for t in range(2 * L - 1, 2 * R + 2) if t not in taken]
        vmid = Fraction(2 * k - 1, 2)
        i = 0
        while i < len(free):
            t = free[i]
            if i + 1 >= len(free) or free[i + 1] != t + 1:
                raise AssertionError(f"unpaired triangle {t} in strip {k}")
            if t % 2:  # down(c) + up(c)
                tiles.append(Tile(LEFT, Fraction((t + 1) // 2), vmid))
            else:  # up(c) + down(c + 1)
                tiles.append(Tile(RIGHT, Fraction(t // 2) + HALF, vmid))
            i += 2
    return tiles


def tile_counts(tiles: list[Tile]) -> dict[str, int]:
    out = {t: 0 for t in TILE_TYPES}
    for tile in tiles:
        out[tile.type] += 1
    return out


def vertical_tiles_on_thread(tiles: list[Tile], k: int) -> int:
    return sum(1 for t in tiles if t.type == VERTICAL and t.v == k)
