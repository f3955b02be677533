import itertools

import mpmath
import pytest

from sawtooth.hciz import orbital_laplace
from sawtooth.tilings.laplace import laplace_L, laplace_L_char
from sawtooth.tilings.patterns import SawtoothSpec, row_distribution


@pytest.fixture(autouse=True)
def _precision():
    with mpmath.workdps(40):
        yield


def close(x, y, tol=mpmath.mpf("1e-25")):
    return abs(x - y) <= tol * max(1, abs(x))


def test_zero_argument_gives_one():
    spec = SawtoothSpec((5, 2, 1, 0))
    for k in range(1, 5):
        assert close(laplace_L(spec, k, [0] * k), 1)
        assert close(laplace_L_char(spec, k, [0] * k), 1)


def test_top_thread_is_orbital_transform():
    spec = SawtoothSpec((6, 3, 0))
    a = [mpmath.mpf("0.3"), mpmath.mpf("-0.1"), mpmath.mpf("0.2")]
    assert close(laplace_L(spec, 3, a), orbital_laplace(a, spec.top))
    assert close(laplace_L_char(spec, 3, a), orbital_laplace(a, spec.top))


def test_bottom_bead_by_hand():
    # top (3,1,0): the bottom bead takes the values 0, 0, 1 over the three patterns
    spec = SawtoothSpec((3, 1, 0))
    assert dict(row_distribution(spec, 1)) == {(0,): 2, (1,): 1}
    a = mpmath.mpf("0.4")
    expected = (2 + mpmath.exp(a)) / 3
    assert close(laplace_L(spec, 1, [a]), expected)
    assert close(laplace_L_char(spec, 1, [a]), expected)


def test_symmetric_in_arguments():
    spec = SawtoothSpec((7, 4, 2, 0))
    a = [mpmath.mpf("0.5"), mpmath.mpf("-0.2"), mpmath.mpf("0.1")]
    ref = laplace_L(spec, 3, a)
    for perm in itertools.permutations(a):
        assert close(laplace_L(spec, 3, list(perm)), ref)
        assert close(laplace_L_char(spec, 3, list(perm)), ref)


def test_two_sides_agree_on_grid():
    grid = [mpmath.mpf(v) for v in ("-0.5", "-0.2", "0", "0.3", "0.5")]
    for top in [(4, 1), (5, 3, 0), (6, 5, 2, -1), (8, 6, 3, 2, 0)]:
        spec = SawtoothSpec(top)
        for k in range(1, spec.N + 1):
            for r in range(len(grid)):
                a = [grid[(r + 2 * j) % 5] for j in range(k)]
                lhs = laplace_L(spec, k, a)
                assert abs(lhs - laplace_L_char(spec, k, a)) / abs(lhs) < mpmath.mpf("1e-30")


def test_argument_checks():
    spec = SawtoothSpec((3, 1, 0))
    with pytest.raises(ValueError):
        laplace_L(spec, 0, [])
    with pytest.raises(ValueError):
        laplace_L(spec, 2, [0.1])
    with pytest.raises(ValueError):
        laplace_L_char(spec, 4, [0, 0, 0, 0])
