import pytest
from hypothesis import given, strategies as st

from conftest import all_partitions, closed, hooks_first_column
from numsemi.errors import NotCofiniteError, ValidationError
from numsemi.numset import (
    NumericalSet,
    from_json,
    invariants,
    is_semigroup,
    is_semigroup_full,
    parse_numerical_set,
    partition_is_semigroup,
    semigroup_from_generators,
    to_json,
    to_numerical_set,
    to_partition,
)
from numsemi.partition import Partition

gap_sets = st.sets(st.integers(1, 30), max_size=14).map(lambda s: NumericalSet(tuple(sorted(s))))
partitions = st.lists(st.integers(1, 9), max_size=9).map(lambda xs: Partition(sorted(xs, reverse=True)))


def test_figure_one():
    lam = Partition([6, 4, 3, 3, 1, 1])
    s = to_numerical_set(lam)
    assert s.gaps == (1, 2, 5, 6, 8, 11)
    assert str(s) == "{0, 3, 4, 7, 9, 10, 12, ->}"
    assert invariants(s) == (6, 11, 3)
    assert to_partition(s) == lam


def test_empty_set_is_naturals():
    s = NumericalSet(())
    assert invariants(s) == (0, -1, 1)
    assert is_semigroup(s).closed
    assert to_partition(s) == ()
    assert str(s) == "{0, ->}"


def test_validation():
    for bad in ((0, 1), (2, 1), (1, 1), (-3,)):
        with pytest.raises(ValidationError):
            NumericalSet(bad)


@given(partitions)
def test_profile_roundtrip_and_invariants(lam):
    s = to_numerical_set(lam)
    assert to_partition(s) == lam
    assert list(s.gaps) == hooks_first_column(lam)
    if lam:
        ones = lam.count(1)
        assert invariants(s) == (len(lam), lam[0] + len(lam) - 1, 1 + ones)


@given(gap_sets)
def test_set_roundtrip(s):
    assert to_numerical_set(to_partition(s)) == s
    assert parse_numerical_set(str(s)) == s
    assert from_json(to_json(s)) == s


@given(gap_sets)
def test_closure_matches_oracles(s):
    fast, full = is_semigroup(s), is_semigroup_full(s)
    assert fast.closed == full.closed == closed(s.gaps)
    assert fast.witness == full.witness
    if fast.witness:
        x, y = fast.witness
        assert x in s and y in s and (x + y) not in s and 0 < x <= y


def test_witness_example():
    s = NumericalSet((1, 2, 4, 5, 6, 7))
    assert not is_semigroup(s).closed
    assert is_semigroup(s).witness == (3, 3)
    assert bool(is_semigroup(NumericalSet((1, 2, 4, 5)))) is True


def test_partition_test_agrees_on_all_small():
    for n in range(13):
        for lam in all_partitions(n):
            assert partition_is_semigroup(lam) == closed(hooks_first_column(lam))


def test_generators():
    s = semigroup_from_generators([3, 5])
    assert s.gaps == (1, 2, 4, 7)
    assert semigroup_from_generators([1]).gaps == ()
    assert semigroup_from_generators([2, 3]).gaps == (1,)
    with pytest.raises(NotCofiniteError):
        semigroup_from_generators([4, 6])


def test_parse_variants():
    assert parse_numerical_set("{0, 3, 5, 6, 8, →}") == NumericalSet((1, 2, 4, 7))
    # members past the conductor may be listed or not
    assert parse_numerical_set("{0,3,5,6,8,9,10,->}") == NumericalSet((1, 2, 4, 7))
    for bad in ("0, 3, ->", "{3, 5, ->}", "{0, x, ->}"):
        with pytest.raises(ValidationError):
            parse_numerical_set(bad)


def test_membership():
    s = NumericalSet((1, 2, 4, 7))
    assert [x for x in range(12) if x in s] == [0, 3, 5, 6, 8, 9, 10, 11]
    assert -1 not in s
    assert s.elements() == [0, 3, 5, 6, 8]
