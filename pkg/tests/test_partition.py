import pytest
from hypothesis import given, settings, strategies as st

from conftest import all_partitions
from numsemi.errors import InvalidCellError, ResourceError, ValidationError
from numsemi.partition import (
    Partition,
    PartitionConstraint,
    all_hook_lengths,
    count_partitions,
    enumerate_partitions,
    first_column_hooks,
    format_frequency,
    format_partition,
    hook_length,
    largest_hook,
    parse_partition,
)

partitions = st.lists(st.integers(1, 9), max_size=9).map(lambda xs: Partition(sorted(xs, reverse=True)))


def test_validation():
    with pytest.raises(ValidationError):
        Partition([1, 2])
    with pytest.raises(ValidationError):
        Partition([3, 0])
    assert Partition([]) == ()


def test_basic_properties():
    lam = Partition([6, 4, 3, 3, 1, 1])
    assert (lam.size, lam.length, lam.ones) == (18, 6, 2)
    assert lam.non_ones() == (6, 4, 3, 3)
    assert lam.conjugate() == (6, 4, 4, 2, 1, 1)
    assert repr(lam) == "[6,4,3,3,1,1]"


def test_hooks():
    lam = Partition([6, 4, 3, 3, 1, 1])
    assert first_column_hooks(lam) == [11, 8, 6, 5, 2, 1]
    assert hook_length(lam, (1, 1)) == 11
    assert hook_length(lam, (2, 2)) == 5
    assert largest_hook(lam) == 11
    assert largest_hook(Partition()) == -1
    with pytest.raises(InvalidCellError):
        hook_length(lam, (5, 2))
    with pytest.raises(InvalidCellError):
        hook_length(lam, (0, 1))


@given(partitions)
def test_hook_table_matches_cellwise(lam):
    cells = [(i + 1, j + 1) for i in range(len(lam)) for j in range(lam[i])]
    assert all_hook_lengths(lam) == [hook_length(lam, c) for c in cells]


@given(partitions)
def test_conjugate_involution(lam):
    assert lam.conjugate().conjugate() == lam
    assert lam.conjugate().size == lam.size


@given(partitions)
def test_text_roundtrip(lam):
    assert parse_partition(format_partition(lam)) == lam
    assert parse_partition(format_frequency(lam)) == lam


def test_parse_forms():
    assert parse_partition("[6,4,3^2,1^2]") == (6, 4, 3, 3, 1, 1)
    assert parse_partition("(2, 1)") == (2, 1)
    assert parse_partition("[]") == ()
    assert format_frequency((6, 4, 3, 3, 1, 1)) == "[6,4,3^2,1^2]"
    for bad in ("6,4", "[a]", "[1,2]", "[0]"):
        with pytest.raises(ValidationError):
            parse_partition(bad)


def test_enumeration_order_and_count():
    got = list(enumerate_partitions(5))
    assert got == [(5,), (4, 1), (3, 2), (3, 1, 1), (2, 2, 1), (2, 1, 1, 1), (1, 1, 1, 1, 1)]
    assert [count_partitions(n) for n in range(12)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56]


def test_budget():
    with pytest.raises(ResourceError):
        next(enumerate_partitions(30, budget=20))
    with pytest.raises(ValidationError):
        next(enumerate_partitions(-1))


constraints = st.builds(
    PartitionConstraint,
    length=st.none() | st.integers(0, 8),
    ones=st.none() | st.integers(0, 5),
    largest_hook=st.none() | st.integers(-1, 12),
    first_two=st.sampled_from([None, "equal", "distinct"]),
    max_part=st.none() | st.integers(1, 8),
    max_length=st.none() | st.integers(1, 8),
    first_part=st.none() | st.integers(1, 8),
)


@settings(max_examples=600)
@given(st.integers(0, 12), constraints)
def test_constrained_generator_equals_filter(n, c):
    expected = [lam for lam in all_partitions(n) if c.admits(lam)]
    assert list(enumerate_partitions(n, c)) == expected


@given(st.integers(0, 12), st.booleans())
def test_no_ones(n, _):
    c = PartitionConstraint(no_ones=True)
    assert list(enumerate_partitions(n, c)) == [lam for lam in all_partitions(n) if 1 not in lam]
