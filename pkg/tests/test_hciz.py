import random
from fractions import Fraction

import mpmath
import pytest

from sawtooth.combinat import Partition, partitions_of, power_sum
from sawtooth.hciz import (
    SpectrumPair,
    CoeffTable,
    dimension,
    extract_coeffs,
    genus_partial_sums,
    hciz_log_series,
    hciz_series,
    hciz_value,
    orbital_laplace,
    orbital_laplace_perturbed,
    vandermonde,
    verify_theorem2,
    walk_series_partial_sum,
)
from sawtooth.tilings.patterns import SawtoothSpec, count_patterns

P = Partition
F = Fraction
mpf = mpmath.mpf


@pytest.fixture(autouse=True)
def high_precision():
    with mpmath.workdps(40):
        yield


def rel(a, b):
    return abs(a - b) / abs(b)


def test_vandermonde_convention():
    assert vandermonde([3, 1]) == 2
    assert vandermonde([1, 3]) == -2


def test_dimension_examples():
    assert dimension([4, 3, 2, 1, 0]) == 1
    assert dimension([2, 0], 2) == 2
    assert dimension([3, 1, 0], 3) == 3
    with pytest.raises(ValueError):
        dimension([0, 1])


def test_dimension_matches_pattern_count():
    rng = random.Random(0)
    for _ in range(30):
        N = rng.randint(1, 6)
        top = sorted(rng.sample(range(-5, 10), N), reverse=True)
        assert dimension(top, N) == count_patterns(SawtoothSpec(top))


def test_hciz_value_examples():
    assert rel(hciz_value(1, SpectrumPair([1, 0], [1, 0])), mpmath.e - 1) < 1e-30
    assert rel(hciz_value(mpf("0.7"), SpectrumPair([2], [3])), mpmath.exp(mpf("4.2"))) < 1e-30
    assert hciz_value(0, SpectrumPair([1, 2, 3], [0, 1, 2])) == 1


def test_hciz_two_by_two_closed_form():
    a1, a2, b1, b2, zz = mpf("0.3"), mpf("-1.1"), 2, -1, mpf("0.8")
    closed = (mpmath.exp(zz * (a1 * b1 + a2 * b2)) - mpmath.exp(zz * (a1 * b2 + a2 * b1))) / (
        zz * (a1 - a2) * (b1 - b2))
    assert rel(hciz_value(zz, SpectrumPair([a1, a2], [b1, b2])), closed) < 1e-30


def test_hciz_symmetries():
    a, b = [mpf("0.5"), mpf("-0.2"), mpf("1.3")], [4, 1, -2]
    zz = mpf("0.9")
    base = hciz_value(zz, SpectrumPair(a, b))
    assert rel(hciz_value(zz, SpectrumPair([a[2], a[0], a[1]], [b[1], b[2], b[0]])), base) < 1e-25
    assert rel(hciz_value(1, SpectrumPair([zz * x for x in a], b)), base) < 1e-25
    assert rel(hciz_value(1, SpectrumPair(a, [zz * x for x in b])), base) < 1e-25


def test_orbital_laplace_distinct_matches_hciz():
    rng = random.Random(1)
    for N in range(1, 6):
        a = rng.sample([-0.5, -0.3, 0.1, 0.2, 0.45, 0.7], N)
        b = sorted(rng.sample(range(-4, 8), N), reverse=True)
        assert rel(orbital_laplace(a, b), hciz_value(1, SpectrumPair(a, b))) < 1e-10


def test_orbital_laplace_repeated():
    assert orbital_laplace([0, 0, 0], [5, 2, -1]) == 1
    t = mpmath.mpf("0.37")
    # with b the staircase the character is trivial: only the correction factor remains
    assert rel(orbital_laplace([t, 0, 0], [2, 1, 0]), ((mpmath.exp(t) - 1) / t) ** 2) < 1e-30
    for a, b in [([0.2, 0.2, -0.1], [3, 1, 0]), ([0.3, 0, 0, 0], [4, 2, 1, -1]), ([0.1, 0.1], [5, -2])]:
        assert rel(orbital_laplace(a, b), orbital_laplace_perturbed(a, b)) < 1e-9


def test_series_first_coefficients():
    rng = random.Random(2)
    for N in range(1, 6):
        a = [F(x) for x in rng.sample(range(-5, 6), N)]
        b = rng.sample(range(-5, 6), N)
        s = hciz_log_series(SpectrumPair(a, b), 2)
        assert s[0] == 0
        assert s[1] == sum(a) * sum(b) / N


def test_series_det_and_schur_agree():
    rng = random.Random(3)
    for N in (2, 3, 4, 5):
        a = [F(x, rng.randint(1, 3)) for x in rng.sample(range(-6, 7), N)]
        b = rng.sample(range(-6, 7), N)
        sp = SpectrumPair(a, b)
        assert hciz_series(sp, 4, "det") == hciz_series(sp, 4, "schur")


def test_series_matches_numeric_value():
    sp = SpectrumPair([F(1), F(-1, 2), F(2)], [3, 0, -1])
    s = hciz_series(sp, 12)
    zz = mpf("0.05")
    approx = sum(mpf(c.numerator) / c.denominator * zz**k for k, c in enumerate(s.coeffs))
    assert rel(approx, hciz_value(zz, SpectrumPair([1, mpf("-0.5"), 2], [3, 0, -1]))) < 1e-18


def closed_d2(N):
    return {
        (P([2]), P([2])): F(1, N * N - 1),
        (P([2]), P([1, 1])): F(-1, N * (N * N - 1)),
        (P([1, 1]), P([2])): F(-1, N * (N * N - 1)),
        (P([1, 1]), P([1, 1])): F(1, N * N * (N * N - 1)),
    }


def test_extract_d1_d2_small():
    for N in (2, 3, 4):
        assert extract_coeffs(N, 1)[[1], [1]] == F(1, N)
    for N in (3, 4):
        assert extract_coeffs(N, 2).entries == closed_d2(N)


def test_order_two_coefficient_n2():
    sp = SpectrumPair([F(1), F(0)], [1, 0])
    C = closed_d2(2)
    expected = sum(C[(al, be)] * power_sum(al, sp.a, True) * power_sum(be, sp.b, True)
                   for al in partitions_of(2) for be in partitions_of(2)) / 2
    assert hciz_log_series(sp, 2)[2] == expected


def test_closed_forms_from_walk_series():
    # the S(2) walk series summed far enough reproduces the closed forms to high accuracy
    for N in (3, 4, 5):
        for (al, be), v in closed_d2(N).items():
            assert abs(walk_series_partial_sum(N, al, be, 30) - v) < F(1, N ** 30)


def test_signs_and_planar_limit():
    for N in (3, 4, 5):
        for (al, be), v in extract_coeffs(N, 3).entries.items():
            assert v * (-1) ** (al.length + be.length) > 0
    # N^{d+l(a)+l(b)-2} |C_N| approaches the planar count as N grows
    al, be = P([3]), P([3])
    scaled = []
    for N in (3, 5, 7, 11):
        C = extract_coeffs(N, 3)[al, be]
        scaled.append(abs(C) * N ** (3 + 1 + 1 - 2))
    gaps = [abs(s - 2) for s in scaled]
    assert gaps == sorted(gaps, reverse=True)


def test_theorem2_d1_exact():
    for N in (2, 3, 5):
        rep = verify_theorem2(N, 1, 0)
        assert rep.pairs[0].errors == [0]
        assert rep.passed


def test_theorem2_d2_tail_is_geometric():
    N = 5
    rep = verify_theorem2(N, 2, 3, rtol=None, atol=1e-6)
    assert rep.passed
    for p in rep.pairs:
        # C = prefactor * sum_g N^{-2g}: the remainder after g <= 3 is prefactor * N^-8 / (1 - N^-2)
        la, lb = p.alpha.length, p.beta.length
        prefactor = F((-1) ** (la + lb)) * F(N) ** (2 - 2 - la - lb)
        assert p.errors[-1] == prefactor * F(1, N ** 8) / (1 - F(1, N * N))
        assert sum(F(1, N ** (2 * g)) for g in range(200)) * prefactor - p.exact < F(1, 10 ** 100)


def test_coeff_table_json_roundtrip():
    t = extract_coeffs(3, 2)
    back = CoeffTable.from_json(t.to_json())
    assert back.entries == t.entries
    assert "2|1+1" in t.to_json()["entries"]


def test_genus_partial_sums_lengths():
    assert len(genus_partial_sums(6, P([2, 1]), P([3]), 4)) == 5
