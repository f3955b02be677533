import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from shapely.geometry import Polygon
from shapely.ops import unary_union

from sawtooth.render import COLORS, tiling_svg
from sawtooth.tilings.lozenges import (
    LEFT,
    RIGHT,
    VERTICAL,
    Tile,
    pattern_to_lozenges,
    tile_counts,
    vertical_tiles_on_thread,
)
from sawtooth.tilings.patterns import BeadArray, SawtoothSpec, enumerate_patterns
from sawtooth.tilings.sampler import sample_pattern

tops = st.lists(st.integers(-4, 9), min_size=1, max_size=5, unique=True).map(lambda v: sorted(v, reverse=True))


def polygons(tiles):
    return [Polygon(t.cartesian()) for t in tiles]


def test_single_bead():
    tiles = pattern_to_lozenges(BeadArray([(0,)]))
    assert tile_counts(tiles) == {LEFT: 0, RIGHT: 1, VERTICAL: 1}
    assert Tile(VERTICAL, Fraction(0), Fraction(1)) in tiles


@settings(max_examples=40, deadline=None)
@given(tops, st.integers(0, 10**6))
def test_threads_and_areas(top, seed):
    p = sample_pattern(SawtoothSpec(top), seed)
    tiles = pattern_to_lozenges(p)
    for k in range(1, p.N + 1):
        assert vertical_tiles_on_thread(tiles, k) == k
    polys = polygons(tiles)
    assert all(abs(q.area - 3**0.5 / 2) < 1e-9 for q in polys)


def test_tilings_are_disjoint_and_cover_the_same_domain():
    spec = SawtoothSpec((6, 4, 1, 0))
    domains = []
    for p in enumerate_patterns(spec):
        polys = polygons(pattern_to_lozenges(p))
        union = unary_union(polys)
        assert abs(union.area - sum(q.area for q in polys)) < 1e-9
        domains.append(union)
    for d in domains[1:]:
        assert d.symmetric_difference(domains[0]).area < 1e-9


def test_rank_six_sample_no_overlap():
    p = sample_pattern(SawtoothSpec((11, 9, 6, 4, 3, 0)), 6)
    polys = polygons(pattern_to_lozenges(p))
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            assert polys[i].intersection(polys[j]).area < 1e-9


def test_distinct_patterns_distinct_tilings():
    a, b = enumerate_patterns(SawtoothSpec((2, 0)))
    assert set(pattern_to_lozenges(a)) != set(pattern_to_lozenges(b))


def test_svg_polygons():
    p = sample_pattern(SawtoothSpec((7, 5, 2, 0)), 1)
    tiles = pattern_to_lozenges(p)
    svg = tiling_svg(tiles)
    assert svg.count("<polygon") == len(tiles)
    for kind, color in COLORS.items():
        assert svg.count(f'class="{kind}"') == tile_counts(tiles)[kind]
        assert color in svg
    one = tiling_svg(pattern_to_lozenges(BeadArray([(0,)])))
    assert one.count('class="vertical"') == 1
    with pytest.raises(ValueError):
        tiling_svg([])


def test_tile_json():
    t = Tile(RIGHT, Fraction(5, 2), Fraction(1, 2))
    assert t.to_json() == {"type": "right", "u": 2.5, "v": 0.5}
    assert Tile(VERTICAL, Fraction(3), Fraction(2)).to_json() == {"type": "vertical", "u": 3, "v": 2}
