from math import factorial

import pytest

from sawtooth.combinat import Partition, partitions_of
from sawtooth.hurwitz import (
    BudgetExceededError,
    HurwitzTable,
    WalkQuery,
    count_walks,
    count_walks_bruteforce,
    genus,
    monotone_by_genus,
    steps_for_genus,
)

P = Partition


def test_base_counts():
    assert count_walks(WalkQuery(1, 0, P([1]), P([1]))) == 1
    assert count_walks(WalkQuery(2, 0, P([2]), P([2]))) == 1
    assert count_walks(WalkQuery(2, 1, P([2]), P([1, 1]))) == 1
    assert count_walks(WalkQuery(3, 0, P([3]), P([3]))) == 2


def test_genus_examples():
    assert genus(0, P([1]), P([1])) == 0
    assert genus(1, P([2]), P([1, 1])) == 0
    assert genus(1, P([2]), P([2])) is None
    with pytest.raises(ValueError):
        genus(0, P([2]), P([1]))


def test_monotone_by_genus_examples():
    assert monotone_by_genus(0, P([2]), P([2])) == 1
    assert monotone_by_genus(0, P([3]), P([1, 1, 1])) == count_walks_bruteforce(
        WalkQuery(3, 2, P([3]), P([1, 1, 1])))
    assert monotone_by_genus(1, P([1]), P([1])) == 0


def test_genus_zero_degree_three():
    # planar monotone counts from the single 3-cycle class
    assert [monotone_by_genus(0, P([3]), b) for b in partitions_of(3)] == [2, 6, 4]


def test_three_cycle_series():
    got = [monotone_by_genus(g, P([3]), P([3])) for g in range(8)]
    assert got == [2, 10, 42, 170, 682, 2730, 10922, 43690]


def _all_queries(d_max, r_max):
    for d in range(1, d_max + 1):
        for a in partitions_of(d):
            for b in partitions_of(d):
                for r in range(r_max + 1):
                    yield a, b, r


@pytest.mark.parametrize("monotone", [True, False])
def test_memoized_matches_bruteforce(monotone):
    for a, b, r in _all_queries(4, 4):
        q = WalkQuery(a.d, r, a, b, monotone)
        assert count_walks(q) == count_walks_bruteforce(q), q


def test_transitivity_endpoint_convention_irrelevant():
    for a, b, r in _all_queries(4, 4):
        for monotone in (True, False):
            q = WalkQuery(a.d, r, a, b, monotone)
            assert count_walks_bruteforce(q, True) == count_walks_bruteforce(q, False)


def test_parity_vanishing_and_monotone_bound():
    for a, b, r in _all_queries(5, 5):
        m = count_walks(WalkQuery(a.d, r, a, b, True))
        c = count_walks(WalkQuery(a.d, r, a, b, False))
        if genus(r, a, b) is None:
            assert m == 0 and c == 0
        assert m <= c


def test_classical_symmetry():
    for a, b, r in _all_queries(5, 4):
        assert count_walks(WalkQuery(a.d, r, a, b, False)) == count_walks(WalkQuery(a.d, r, b, a, False))


def test_degree_one():
    for r in range(4):
        assert count_walks(WalkQuery(1, r, P([1]), P([1]))) == (1 if r == 0 else 0)


def test_crude_upper_bound():
    table = HurwitzTable(d_max=5, r_max=12)
    for d in range(1, 6):
        for a in partitions_of(d):
            for b in partitions_of(d):
                for g in range(3):
                    try:
                        steps_for_genus(g, a, b)
                    except ValueError:
                        continue
                    if steps_for_genus(g, a, b) > 12:
                        continue
                    h = table.monotone_by_genus(g, a, b)
                    assert h <= factorial(d) ** (2 * g + a.length + b.length)


def test_budget():
    with pytest.raises(BudgetExceededError) as exc:
        count_walks(WalkQuery(6, 8, P([1] * 6), P([1] * 6), False), budget=1000)
    assert exc.value.bound == 1000


def test_key_roundtrip_and_table_persistence(tmp_path):
    q = WalkQuery(3, 2, P([3]), P([1, 1, 1]))
    assert WalkQuery.from_key(q.key()) == q
    path = tmp_path / "table.json"
    t = HurwitzTable(d_max=4, r_max=6, path=path)
    v = t.get(q)
    t.save()
    t2 = HurwitzTable(d_max=4, r_max=6)
    t2.load(path)
    assert t2.to_json() == t.to_json()
    assert t2.get(q) == v
