import json

import pytest

from conftest import all_partitions, closed, hooks_first_column
from numsemi import counting
from numsemi.counting import (
    PF,
    PG,
    PM,
    CountCache,
    CountKey,
    a,
    a_bar,
    b,
    box_count,
    checked,
    count_semigroup_partitions,
    cumulative_p,
    evaluate,
    p,
    p_bar,
    p_ji,
    s_prime,
)
from numsemi.errors import CountOverflowError, DomainError, ResourceError
from numsemi.partition import PartitionConstraint

# partition numbers, OEIS A000041
P_VALUES = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176, 231, 297, 385, 490, 627]


def _sg(lam):
    return closed(hooks_first_column(lam))


def test_p_frozen():
    assert [p(n) for n in range(21)] == P_VALUES
    assert p(100) == 190569292
    assert p(-1) == 0


def test_p_against_enumeration():
    for n in range(26):
        assert p(n) == sum(1 for _ in all_partitions(n))


def test_p_overflow():
    with pytest.raises(CountOverflowError):
        p(500)
    with pytest.raises(CountOverflowError):
        checked(1 << 63)
    assert checked((1 << 63) - 1) == (1 << 63) - 1


def test_small_closed_forms():
    assert p_bar(0) == 1 and p_bar(1) == 0 and p_bar(6) == 4
    assert p_bar(11) == p(11) - p(10)
    assert a(4) == 1 and a_bar(4) == 1
    assert b(1) == 0 and b(4) == 7 and b(5) == 11
    assert p_ji(4, 5) == 0 and p_ji(4, 2) == 4
    assert all(p_ji(j, 1) == p(j) for j in range(1, 21))
    with pytest.raises(DomainError):
        b(0)
    with pytest.raises(DomainError):
        p_ji(3, 0)


def test_closed_forms_against_enumeration():
    for n in range(0, 22):
        parts = list(all_partitions(n))
        assert p_bar(n) == sum(1 for x in parts if 1 not in x)
        assert a(n) == sum(1 for x in parts if 1 not in x and len(x) >= 2)
        assert a_bar(n) == sum(1 for x in parts if 1 not in x and len(x) >= 2 and x[0] == x[1])
        if n >= 1:
            assert b(n) == sum(1 for x in all_partitions(n + 2) if len(x) <= n and x[0] <= n)
        for i in range(1, n + 2):
            assert p_ji(n, i) == sum(1 for x in parts if x and x[0] >= i)


def test_box_identity():
    assert all(b(n) == p(n + 2) - 4 for n in range(4, 61))
    assert box_count(6, 2, 3) == 1


def test_a_corollary():
    assert all(a(n + 1) - a(n) == a_bar(n + 1) for n in range(1, 61))


def test_spec_examples():
    assert PG(6, 4) == 2
    assert PF(7, 7) == 4
    assert PM(10, 6) == 2
    assert s_prime(0) == 1 and s_prime(1) == 2


def test_brute_force_against_oracle():
    for n in range(0, 16):
        parts = [x for x in all_partitions(n) if _sg(x)]
        for g in range(0, n + 1):
            assert PG(n, g) == sum(1 for x in parts if len(x) == g)
        for f in range(-1, n + 1):
            assert PF(n, f) == sum(1 for x in parts if (x[0] + len(x) - 1 if x else -1) == f)
        for m in range(1, n + 2):
            assert PM(n, m) == sum(1 for x in parts if x.count(1) == m - 1)


def test_marginals_agree():
    for n in range(0, 30):
        total = count_semigroup_partitions(n)
        assert sum(PG(n, g) for g in range(n + 1)) == total
        assert sum(PF(n, f) for f in range(-1, n + 1)) == total
        assert sum(PM(n, m) for m in range(1, n + 2)) == total


def test_prop_bound():
    for n in range(0, 30):
        for m in range(1, n + 2):
            assert PM(n, m) <= p_bar(n + 1 - m)
            if 2 * m > n:
                assert PM(n, m) == p_bar(n + 1 - m)


def test_figure_one_counted():
    from numsemi.numset import partition_is_semigroup

    # (6,4,3,3,1,1) is not a semigroup partition, so s_prime(18) - s_prime(17) excludes it
    assert not partition_is_semigroup((6, 4, 3, 3, 1, 1))
    assert s_prime(18) - s_prime(17) == count_semigroup_partitions(18)


def test_cumulative():
    assert cumulative_p(4) == 1 + 1 + 2 + 3 + 5


def test_budget():
    with pytest.raises(ResourceError):
        PG(250, 3, cache=CountCache())


def test_parallel_equals_sequential():
    c = PartitionConstraint(ones=3)
    assert count_semigroup_partitions(30, c, workers=2) == count_semigroup_partitions(30, c)
    assert count_semigroup_partitions(26, workers=2) == count_semigroup_partitions(26)


def test_count_key():
    k = CountKey("PG", (6, 4))
    assert str(k) == "PG:6,4"
    assert CountKey.parse("PG:6,4") == k
    with pytest.raises(DomainError):
        CountKey("PG", (1,))
    with pytest.raises(DomainError):
        CountKey("NOPE", (1,))


def test_cache_roundtrip(tmp_path):
    path = tmp_path / "counts.json"
    c = CountCache(path)
    assert evaluate("PG", (12, 8), cache=c) == p(4)
    evaluate("P", (30,), cache=c)
    c.save()
    raw = json.loads(path.read_text())
    assert raw["entries"]["PG:12,8"] == "5"
    again = CountCache(path)
    assert not again.corrupt
    assert again.get(CountKey("P", (30,))) == 5604


def test_cache_corruption_recomputes(tmp_path):
    path = tmp_path / "counts.json"
    c = CountCache(path)
    evaluate("PG", (12, 8), cache=c)
    c.save()
    raw = json.loads(path.read_text())
    raw["entries"]["PG:12,8"] = "999"
    path.write_text(json.dumps(raw))
    bad = CountCache(path)
    assert bad.corrupt and len(bad) == 0
    assert evaluate("PG", (12, 8), cache=bad) == 5
    path.write_text("{not json")
    assert CountCache(path).corrupt


def test_cache_disagreement():
    c = CountCache()
    c.put(CountKey("P", (3,)), 3)
    c.put(CountKey("P", (3,)), 3)
    with pytest.raises(RuntimeError):
        c.put(CountKey("P", (3,)), 4)


def test_evaluate_dispatch():
    c = CountCache()
    for fn, args in [("P", (10,)), ("PBAR", (6,)), ("A", (4,)), ("ABAR", (4,)), ("B", (4,)), ("PJI", (4, 2))]:
        assert evaluate(fn, args, cache=c) == {"P": 42, "PBAR": 4, "A": 1, "ABAR": 1, "B": 7, "PJI": 4}[fn]
    assert evaluate("SPRIME", (1,), cache=c) == 2
